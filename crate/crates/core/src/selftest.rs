//! Property suites over every module, run at a quick or a full size.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::{Complex, Float, Integer, Rational};
use serde::Serialize;

use crate::arith::modular::{is_prime, permutation_sign};
use crate::arith::{gcd, kronecker_symbol, phase_to_complex, PhaseRational, PrecisionConfig};
use crate::error::{Error, Result};
use crate::eta::{
    cocycle_w, dedekind_sum, dedekind_sum_direct, eta_multiplier, eta_multiplier_knopp, scalar_kloosterman, Conjugate, Eta,
    UnimodularMatrix,
};
use crate::geometry::{delta_record, max_r, verify_x_identity, x_r};
use crate::kloosterman::{
    bridge_infinity, bridge_zero, s_zero_inf, s_zero_inf_simplified, vanishing_combination_check, InfKernel, VanishingCase,
};
use crate::mup::{m_matrix, mu_matrix, Gamma0Sampler, PermPhaseMatrix};
use crate::partition::{
    coefficient_oracle, dyson_identity_check, partition_numbers, rank_mod_counts, rank_table, verify_rank_inversion, DysonIdentity,
};
use crate::series::{
    bringmann_infinity_term, default_c_max, main_infinity_term, rademacher_p, rounded_counts, MainFormula, ROUNDING_MARGIN,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SelftestLevel {
    Quick,
    Full,
}

impl FromStr for SelftestLevel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Self::Quick),
            "full" => Ok(Self::Full),
            other => Err(Error::UnknownCase(other.to_string())),
        }
    }
}

impl fmt::Display for SelftestLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Quick => "quick",
            Self::Full => "full",
        })
    }
}

/// Outcome of one property suite.
#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub module: &'static str,
    pub name: &'static str,
    pub cases: u64,
    pub pass: bool,
    /// First counterexample, or a summary statistic.
    pub detail: String,
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub level: SelftestLevel,
    pub seed: u64,
    pub precision_bits: u32,
    pub checks: Vec<CheckOutcome>,
    pub pass: bool,
}

/// Case counts for one level.
struct Sizes {
    random: usize,
    phase_pairs: usize,
    entry_bound: i64,
    partition_n: usize,
    inversion_n: usize,
    words: usize,
    restricted: usize,
    geometry_p: i64,
    geometry_a: i64,
    bridge_multiple: i64,
    bridge_a: i64,
    vanishing_c: i64,
    vanishing_n: i64,
    term_pairs: usize,
}

impl Sizes {
    fn new(level: SelftestLevel) -> Self {
        match level {
            SelftestLevel::Quick => Self {
                random: 200,
                phase_pairs: 1000,
                entry_bound: 12,
                partition_n: 100,
                inversion_n: 40,
                words: 60,
                restricted: 40,
                geometry_p: 41,
                geometry_a: 60,
                bridge_multiple: 4,
                bridge_a: 30,
                vanishing_c: 60,
                vanishing_n: 2,
                term_pairs: 20,
            },
            SelftestLevel::Full => Self {
                random: 1000,
                phase_pairs: 10_000,
                entry_bound: 50,
                partition_n: 400,
                inversion_n: 200,
                words: 500,
                restricted: 500,
                geometry_p: 131,
                geometry_a: 500,
                bridge_multiple: 20,
                bridge_a: 200,
                vanishing_c: 500,
                vanishing_n: 10,
                term_pairs: 100,
            },
        }
    }
}

/// Running tally for one suite.
struct Tally {
    cases: u64,
    failure: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Self { cases: 0, failure: None }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(what());
        }
    }

    fn finish(self, summary: String) -> (u64, bool, String) {
        match self.failure {
            Some(f) => (self.cases, false, f),
            None => (self.cases, true, summary),
        }
    }
}

type Suite = fn(&Sizes, &mut ChaCha8Rng, &PrecisionConfig) -> Result<(u64, bool, String)>;

const SUITES: &[(&str, &str, Suite)] = &[
    ("core-arith", "phase-group-laws", phase_group_laws),
    ("core-arith", "phase-evaluation-homomorphism", phase_evaluation),
    ("core-arith", "kronecker-multiplicativity", kronecker_multiplicative),
    ("partition-lab", "rank-rows-sum-to-p", rank_rows_total),
    ("partition-lab", "rank-inversion-exact", rank_inversion),
    ("partition-lab", "oracle-reflection", oracle_reflection),
    ("partition-lab", "ramanujan-congruences", ramanujan_congruences),
    ("partition-lab", "dyson-identities", dyson_identities),
    ("eta-multiplier", "dedekind-paths-agree", dedekind_paths),
    ("eta-multiplier", "eta-matches-knopp", eta_knopp),
    ("eta-multiplier", "multiplier-axioms", multiplier_axioms),
    ("eta-multiplier", "kloosterman-conjugation", kloosterman_conjugation),
    ("mup-multiplier", "permutation-shape-and-adjoint", mu_shape),
    ("mup-multiplier", "translation-is-scalar", mu_translation),
    ("mup-multiplier", "cocycle-on-words", mu_cocycle),
    ("mup-multiplier", "restriction-to-gamma1", mu_restriction),
    ("mup-multiplier", "determinant-sign", mu_determinant),
    ("rank-geometry", "condition-equivalences", geometry_conditions),
    ("rank-geometry", "x-identity", geometry_x_identity),
    ("kloosterman-sums", "bridge-identities", bridges),
    ("kloosterman-sums", "zero-cusp-forms-agree", zero_cusp_forms),
    ("kloosterman-sums", "trivial-bound", trivial_bound),
    ("kloosterman-sums", "vanishing-combinations", vanishing),
    ("exact-series", "integer-rounding", integer_rounding),
    ("exact-series", "term-level-equality", term_equality),
    ("exact-series", "tail-decay", tail_decay),
];

/// Runs every suite; `pass` is the conjunction of the individual outcomes.
pub fn run_selftest(level: SelftestLevel, seed: u64, cfg: &PrecisionConfig) -> Result<SelftestReport> {
    run_modules(level, seed, cfg, &[])
}

/// Runs the suites of the named modules, or all of them when `modules` is empty.
pub fn run_modules(level: SelftestLevel, seed: u64, cfg: &PrecisionConfig, modules: &[&str]) -> Result<SelftestReport> {
    if let Some(unknown) = modules.iter().find(|m| !SUITES.iter().any(|s| s.0 == **m)) {
        return Err(Error::UnknownCase(unknown.to_string()));
    }
    let sizes = Sizes::new(level);
    let mut checks = Vec::with_capacity(SUITES.len());
    for (i, &(module, name, suite)) in SUITES.iter().enumerate() {
        if !modules.is_empty() && !modules.contains(&module) {
            continue;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
        let started = Instant::now();
        let (cases, pass, detail) = suite(&sizes, &mut rng, cfg)?;
        checks.push(CheckOutcome { module, name, cases, pass, detail, elapsed_ms: started.elapsed().as_millis() });
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(SelftestReport { level, seed, precision_bits: cfg.working_bits, checks, pass })
}

fn random_phase(rng: &mut ChaCha8Rng) -> PhaseRational {
    PhaseRational::from_ratio(rng.random_range(-10_000..10_000), rng.random_range(1..5000))
}

fn phase_group_laws(s: &Sizes, rng: &mut ChaCha8Rng, _: &PrecisionConfig) -> Result<(u64, bool, String)> {
    let mut t = Tally::new();
    for _ in 0..s.random {
        let (a, b, c) = (random_phase(rng), random_phase(rng), random_phase(rng));
        t.check((&a * &b) * c.clone() == &a * &(&b * &c), || format!("associativity fails at {a}, {b}, {c}"));
        t.check(&a * &b == &b * &a, || format!("commutativity fails at {a}, {b}"));
        let complement = PhaseRational::new(Rational::from(1) - a.theta());
        t.check((&a * &complement).is_zero(), || format!("phase({a}) phase(1 - {a}) != 1"));
    }
    Ok(t.finish("exact".into()))
}

fn phase_evaluation(s: &Sizes, rng: &mut ChaCha8Rng, cfg: &PrecisionConfig) -> Result<(u64, bool, String)> {
    let mut t = Tally::new();
    // 8 ulp at magnitude 1
    let mut tol = Float::with_val(cfg.working_bits, 8);
    tol >>= cfg.working_bits - 1;
    let mut worst = Float::with_val(cfg.working_bits, 0);
    for _ in 0..s.phase_pairs {
        let (a, b) = (random_phase(rng), random_phase(rng));
        let product = phase_to_complex(&a, cfg) * phase_to_complex(&b, cfg);
        let direct = phase_to_complex(&(&a * &b), cfg);
        let err = Float::with_val(cfg.working_bits, Complex::with_val(cfg.working_bits, &product - &direct).abs_ref());
        t.check(err <= tol, || format!("{a} + {b}: error {}", err.to_f64()));
        worst = worst.max(&err);
    }
    Ok(t.finish(format!("worst {:.3e}", worst.to_f64())))
}

fn kronecker_multiplicative(s: &Sizes, rng: &mut ChaCha8Rng, _: &PrecisionConfig) -> Result<(u64, bool, String)> {
    let mut t = Tally::new();
    let samples = s.random * 10;
    for _ in 0..samples {
        let a: i64 = rng.random_range(-100_000..100_000);
        let b: i64 = rng.random_range(-100_000..100_000);
        let n: i64 = rng.random_range(1..100_000);
        let lhs = kronecker_symbol(a * b, n);
        let rhs = kronecker_symbol(a, n) * kronecker_symbol(b, n);
        t.check(lhs == rhs, || format!("({a}*{b}|{n}) = {lhs}, product {rhs}"));
    }
    Ok(t.finish("exact".into()))
}

fn rank_rows_total(s: &Sizes, _: &mut ChaCha8Rng, _: &PrecisionConfig) -> Result<(u64, bool, String)> {
    let table = rank_table(s.partition_n)?;
    let partitions = partition_numbers(s.partition_n);
    let mut t = Tally::new();
    for (n, expected) in partitions.iter().enumerate() {
        let total = Integer::from(table.total(n)?);
        t.check(total == *expected, || format!("row {n} sums to {total}, p(n) = {expected}"));
    }
    Ok(t.finish(format!("n <= {}", s.partition_n)))
}

fn rank_inversion(s: &Sizes, _: &mut ChaCha8Rng, cfg: &PrecisionConfig) -> Result<(u64, bool, String)> {
    let table = rank_table(s.inversion_n)?;
    let mut t = Tally::new();
    let mut worst = 0.0f64;
    for b in 2..=13 {
        for n in 1..=s.inversion_n {
            for a in 0..b {
                let dev = verify_rank_inversion(a, b, n, &table, cfg)?.to_f64();
                worst = worst.max(dev);
                t.check(dev < 0.5, || format!("a={a} b={b} n={n}: deviation {dev}"));
            }
        }
    }
    Ok(t.finish(format!("worst deviation {worst:.3e}")))
}

fn oracle_reflection(s: &Sizes, _: &mut ChaCha8Rng, cfg: &PrecisionConfig) -> Result<(u64, bool, String)> {
    let table = rank_table(s.inversion_n)?;
    let mut t = Tally::new();
    let mut tol = Float::with_val(cfg.working_bits, 1);
    tol >>= cfg.working_bits / 2;
    for b in 2..=13 {
        for ell in 1..b {
            for n in 1..=s.inversion_n {
                let x = coefficient_oracle(ell, b, n, &table, cfg)?.value;
                let y = coefficient_oracle(b - ell, b, n, &table, cfg)?.value;
                let gap = Float::with_val(cfg.working_bits, &x - &y).abs();
                t.check(gap <= tol, || format!("A({ell}/{b}; {n}) - A({}/{b}; {n}) = {}", b - ell, gap.to_f64()));
            }
        }
    }
    Ok(t.finish("to working precision".into()))
}

fn ramanujan_congruences(s: &Sizes, _: &mut ChaCha8Rng, _: &PrecisionConfig) -> Result<(u64, bool, String)> {
    let partitions = partition_numbers(s.partition_n * 4);
    let mut t = Tally::new();
    for (m, k) in [(5usize, 4usize), (7, 5), (11, 6)] {
        for n in (k..partitions.len()).step_by(m) {
            t.check(partitions[n].is_divisible_u(m as u32), || format!("p({n}) not divisible by {m}"));
        }
    }
    Ok(t.finish(format!("arguments <= {}", partitions.len() - 1)))
}

fn dyson_identities(s: &Sizes, _: &mut ChaCha8Rng, _: &PrecisionConfig) -> Result<(u64, bool, String)> {
    let table = rank_table(s.partition_n)?;
    let mut t = Tally::new();
    for id in DysonIdentity::ALL {
        let report = dyson_identity_check(id, s.partition_n, &table)?;
        for c in &report.checks {
            t.check(c.pass, || format!("{id} fails at {}", c.n));
        }
    }
    Ok(t.finish(format!("arguments <= {}", s.partition_n)))
}

fn dedekind_paths(s: &Sizes, rng: &mut ChaCha8Rng, _: &PrecisionConfig) -> Result<(u64, bool, String)> {
    let mut t = Tally::new();
    while (t.cases as usize) < s.random * 10 {
        let c = rng.random_range(1..=2000i64);
        let d = rng.random_range(-5000..=5000i64);
        if gcd(d, c) != 1 {
            continue;
        }
        let (fast, slow) = (dedekind_sum(d, c)?, dedekind_sum_direct(d, c)?);
        t.check(fast == slow, || format!("s({d}, {c}): {fast} vs {slow}"));
    }
    Ok(t.finish("exact".into()))
}

fn eta_knopp(s: &Sizes, _: &mut ChaCha8Rng, _: &PrecisionConfig) -> Result<(u64, bool, String)> {
    let bound = s.entry_bound;
    let mut t = Tally::new();
    for a in -bound..=bound {
        for c in (-bound..=bound).filter(|&c| c != 0 && gcd(a, c) == 1) {
            for d in -bound..=bound {
                if (a * d - 1) % c != 0 || ((a * d - 1) / c).abs() > bound {
                    continue;
                }
                let g = UnimodularMatrix::new(a, (a * d - 1) / c, c, d)?;
                let (x, y) = (eta_multiplier(&g)?, eta_multiplier_knopp(&g)?);
                t.check(x == y, || format!("{g}: {x} vs {y}"));
            }
        }
    }
    Ok(t.finish(format!("|entries| <= {bound}")))
}

fn multiplier_axioms(s: &Sizes, rng: &mut ChaCha8Rng, cfg: &PrecisionConfig) -> Result<(u64, bool, String)> {
    let half = Rational::from((1, 2));
    let mut sampler = Gamma0Sampler::with_bound(1, rng.random(), 1_000_000);
    let mut t = Tally::new();
    let minus = eta_multiplier(&-UnimodularMatrix::IDENTITY)?;
    t.check(minus == PhaseRational::from_ratio(-1, 4), || format!("nu(-I) = {minus}"));
    for _ in 0..s.words {
        let (g1, g2) = (sampler.sample(), sampler.sample());
        let w = cocycle_w(&half, &g1, &g2, cfg)?;
        let lhs = eta_multiplier(&g1.checked_mul(&g2)?)?;
        let rhs = &w * &(eta_multiplier(&g1)? * eta_multiplier(&g2)?);
        t.check(lhs == rhs, || format!("cocycle relation fails at {g1}, {g2}"));
        let b = rng.random_range(-50..50);
        let shifted = eta_multiplier(&g1.checked_mul(&UnimodularMatrix::translation(b))?)?;
        t.check(shifted == eta_multiplier(&g1)? * PhaseRational::from_ratio(b, 24), || format!("translation by {b} fails at {g1}"));
    }
    Ok(t.finish("exact phases, |nu| = 1 by construction".into()))
}

fn kloosterman_conjugation(s: &Sizes, rng: &mut ChaCha8Rng, cfg: &PrecisionConfig) -> Result<(u64, bool, String)> {
    let (alpha, beta) = (Rational::from((23, 24)), Rational::from((1, 24)));
    let mut tol = Float::with_val(cfg.working_bits, 1);
    tol >>= cfg.working_bits / 2;
    let mut t = Tally::new();
    for _ in 0..s.random {
        let c = rng.random_range(1..80);
        let (m, n) = (rng.random_range(-20..20), rng.random_range(-20..20));
        let lhs = scalar_kloosterman(m, n, c, &Conjugate(Eta), &alpha, cfg)?;
        let rhs = scalar_kloosterman(1 - m, 1 - n, c, &Eta, &beta, cfg)?;
        let gap = Float::with_val(cfg.working_bits, (Complex::with_val(cfg.working_bits, lhs.conj_ref()) - &rhs).abs_ref());
        t.check(gap <= tol, || format!("(m, n, c) = ({m}, {n}, {c}): {}", gap.to_f64()));
    }
    Ok(t.finish("to 2^(-P/2)".into()))
}

const LEVELS: [i64; 4] = [5, 7, 11, 13];

fn mu_shape(s: &Sizes, rng: &mut ChaCha8Rng, _: &PrecisionConfig) -> Result<(u64, bool, String)> {
    let mut t = Tally::new();
    for p in LEVELS {
        let mut sampler = Gamma0Sampler::new(p, rng.random());
        for _ in 0..s.restricted {
            let g = sampler.sample();
            let m = mu_matrix(&g, p)?;
            t.check(m.is_bijection(), || format!("p={p}, {g}: not one phase per row and column"));
            t.check(m.compose(&m.inverse())? == PermPhaseMatrix::identity(p), || format!("p={p}, {g}: inverse is not the adjoint"));
        }
    }
    Ok(t.finish("exact".into()))
}

fn mu_translation(_: &Sizes, _: &mut ChaCha8Rng, _: &PrecisionConfig) -> Result<(u64, bool, String)> {
    let mut t = Tally::new();
    for p in LEVELS {
        let m = mu_matrix(&UnimodularMatrix::T, p)?;
        t.check(m.is_scalar() == Some(&PhaseRational::from_ratio(-1, 24)), || format!("mu_{p}(T) = {m:?}"));
    }
    Ok(t.finish("e(-1/24) I".into()))
}

fn mu_cocycle(s: &Sizes, rng: &mut ChaCha8Rng, cfg: &PrecisionConfig) -> Result<(u64, bool, String)> {
    let half = Rational::from((1, 2));
    let mut t = Tally::new();
    for p in [5, 7, 11] {
        let mut sampler = Gamma0Sampler::with_bound(p, rng.random(), 1_000_000);
        for _ in 0..s.words {
            let (g1, g2) = (sampler.sample(), sampler.sample());
            let w = cocycle_w(&half, &g1, &g2, cfg)?;
            let lhs = mu_matrix(&g1.checked_mul(&g2)?, p)?;
            let rhs = mu_matrix(&g1, p)?.compose(&mu_matrix(&g2, p)?)?.scale(&w);
            t.check(lhs == rhs, || format!("p={p}: {g1} {g2}"));
        }
    }
    Ok(t.finish("exact".into()))
}

fn mu_restriction(s: &Sizes, rng: &mut ChaCha8Rng, _: &PrecisionConfig) -> Result<(u64, bool, String)> {
    let mut t = Tally::new();
    for p in [5, 7, 11] {
        let mut sampler = Gamma0Sampler::new(p, rng.random());
        for _ in 0..s.restricted {
            let g = sampler.sample_gamma1_restricted();
            let m = mu_matrix(&g, p)?;
            let want = eta_multiplier(&g)?.conj();
            t.check(m.is_scalar() == Some(&want), || format!("p={p}: {g}"));
        }
    }
    Ok(t.finish("exact".into()))
}

fn mu_determinant(s: &Sizes, rng: &mut ChaCha8Rng, _: &PrecisionConfig) -> Result<(u64, bool, String)> {
    let mut t = Tally::new();
    for p in LEVELS {
        let mut sampler = Gamma0Sampler::new(p, rng.random());
        for _ in 0..s.restricted {
            let g = sampler.sample();
            let m = m_matrix(&g, p)?;
            // independent of the matrix code: the permutation l -> [dl]
            let image: Vec<usize> = (1..p).map(|l| ((g.d * l).rem_euclid(p) - 1) as usize).collect();
            let sign = permutation_sign(&image);
            t.check(m.det() == PhaseRational::sign(sign), || format!("p={p}: {g}"));
        }
    }
    Ok(t.finish("exact".into()))
}

fn geometry_conditions(s: &Sizes, _: &mut ChaCha8Rng, cfg: &PrecisionConfig) -> Result<(u64, bool, String)> {
    let mut t = Tally::new();
    let mut margin = Float::with_val(cfg.working_bits, 1);
    margin >>= cfg.working_bits / 2;
    for p in (5..=s.geometry_p).filter(|&p| is_prime(p)) {
        for r in 0..=max_r(p)? {
            let x = x_r(r as u32, cfg);
            for a in (1..=s.geometry_a).filter(|a| a % p != 0) {
                for ell in 1..p {
                    let rec = delta_record(ell, p, a, r)?;
                    let y = Float::with_val(cfg.working_bits, rec.reduced) / p;
                    let one_minus = Float::with_val(cfg.working_bits, 1 - &y);
                    let distance =
                        Float::with_val(cfg.working_bits, &y - &x).abs().min(&Float::with_val(cfg.working_bits, &one_minus - &x).abs());
                    t.check(distance > margin, || format!("[al]/p too close to x_r at p={p} a={a} l={ell} r={r}"));
                    let inside = y > 0 && (y < x || one_minus < x);
                    t.check(inside == rec.in_condition && rec.in_condition == (rec.delta > 0), || {
                        format!("p={p} a={a} l={ell} r={r}: inside {inside}, delta {}", rec.delta)
                    });
                }
            }
        }
    }
    Ok(t.finish(format!("p <= {}, a <= {}; m forms checked inside delta_record", s.geometry_p, s.geometry_a)))
}

fn geometry_x_identity(s: &Sizes, _: &mut ChaCha8Rng, _: &PrecisionConfig) -> Result<(u64, bool, String)> {
    let mut t = Tally::new();
    let mut members = 0;
    for p in (5..=s.geometry_p).filter(|&p| is_prime(p)) {
        for r in 0..=max_r(p)? {
            match verify_x_identity(p, r) {
                Ok(m) => {
                    members += m;
                    t.check(true, String::new);
                }
                Err(e) => t.check(false, || e.to_string()),
            }
        }
    }
    Ok(t.finish(format!("{members} condition-set members")))
}

fn bridges(s: &Sizes, _: &mut ChaCha8Rng, cfg: &PrecisionConfig) -> Result<(u64, bool, String)> {
    let mut tol = Float::with_val(cfg.working_bits, 1);
    tol >>= cfg.working_bits / 2;
    let mut t = Tally::new();
    let mut worst = Float::with_val(cfg.working_bits, 0);
    for p in LEVELS {
        for n in [0, 1, 6] {
            for c in (1..=s.bridge_multiple).map(|k| k * p) {
                for ell in 1..p {
                    let gap = bridge_infinity(ell, p, c, n, cfg)?;
                    t.check(gap <= tol, || format!("infinity p={p} l={ell} c={c} n={n}: {}", gap.to_f64()));
                    worst = worst.max(&gap);
                }
            }
            for r in 0..=max_r(p)?.max(0) {
                for a in (1..=s.bridge_a).filter(|a| a % p != 0) {
                    for ell in 1..p {
                        if let Some(gap) = bridge_zero(ell, p, a, r, n, cfg)? {
                            t.check(gap <= tol, || format!("zero p={p} l={ell} a={a} r={r} n={n}: {}", gap.to_f64()));
                            worst = worst.max(&gap);
                        }
                    }
                }
            }
        }
    }
    Ok(t.finish(format!("worst {:.3e}", worst.to_f64())))
}

fn zero_cusp_forms(s: &Sizes, _: &mut ChaCha8Rng, cfg: &PrecisionConfig) -> Result<(u64, bool, String)> {
    let mut tol = Float::with_val(cfg.working_bits, 1);
    tol >>= cfg.working_bits / 2;
    let mut t = Tally::new();
    for p in [7, 11, 37] {
        for r in 0..=max_r(p)? {
            for a in (1..=s.bridge_a).filter(|a| a % p != 0) {
                for ell in 1..p {
                    for n in [1, 5] {
                        let x = s_zero_inf(ell, n, a, p, r, cfg)?;
                        let y = s_zero_inf_simplified(ell, n, a, p, r, cfg)?;
                        let gap = Float::with_val(cfg.working_bits, Complex::with_val(cfg.working_bits, &x.value - &y.value).abs_ref());
                        t.check(gap <= tol, || format!("p={p} l={ell} a={a} r={r} n={n}: {}", gap.to_f64()));
                    }
                }
            }
        }
    }
    Ok(t.finish("to 2^(-P/2)".into()))
}

fn trivial_bound(s: &Sizes, rng: &mut ChaCha8Rng, cfg: &PrecisionConfig) -> Result<(u64, bool, String)> {
    let mut t = Tally::new();
    for p in LEVELS {
        let mut angle = cfg.pi();
        angle /= p;
        let weight: Float = 1 / angle.sin();
        for k in 1..=s.bridge_multiple {
            let kernel = InfKernel::new(k * p, p)?;
            for ell in 1..p {
                let (m, n) = (rng.random_range(-30..30), rng.random_range(-30..30));
                let v = kernel.evaluate(ell, m, n, cfg)?;
                t.check(v.within_trivial_bound(&weight), || format!("S_inf p={p} c={} l={ell}", k * p));
            }
            for a in (1..=s.bridge_a.min(60)).filter(|a| a % p != 0) {
                let ell = rng.random_range(1..p);
                let v = s_zero_inf(ell, rng.random_range(-30..30), a, p, 0, cfg)?;
                t.check(v.within_trivial_bound(&cfg.real(1)), || format!("S_0 p={p} a={a} l={ell}"));
            }
        }
    }
    Ok(t.finish("all within term count times the largest weight".into()))
}

fn vanishing(s: &Sizes, _: &mut ChaCha8Rng, cfg: &PrecisionConfig) -> Result<(u64, bool, String)> {
    let mut t = Tally::new();
    for case in VanishingCase::ALL {
        let (p, _) = case.progression();
        for n in 0..=s.vanishing_n {
            for c in (p..=s.vanishing_c).step_by(p as usize) {
                let r = vanishing_combination_check(case, n, c, cfg)?;
                t.check(r.pass, || format!("{case} n={n} c={c}: residual {:.3e}", r.residual.to_f64()));
            }
        }
    }
    Ok(t.finish(format!("c <= {}, n <= {}", s.vanishing_c, s.vanishing_n)))
}

fn integer_rounding(s: &Sizes, _: &mut ChaCha8Rng, cfg: &PrecisionConfig) -> Result<(u64, bool, String)> {
    let mut t = Tally::new();
    let partitions = partition_numbers(s.inversion_n);
    for (n, expected) in partitions.iter().enumerate().skip(1) {
        let r = rademacher_p(n as i64, 25, cfg)?;
        let ok = r.margin < ROUNDING_MARGIN && r.nearest_integer.as_ref() == Some(expected);
        t.check(ok, || format!("p({n}): margin {:.3}", r.margin.to_f64()));
    }
    // rank counts rebuilt from the exact formula
    let table = rank_table(60)?;
    for (p, k) in [(5, 4), (7, 5)] {
        let report = crate::series::dyson_via_kloosterman(p, k, 40, cfg)?;
        for check in &report.checks {
            let expected: Vec<Integer> =
                (0..p).map(|a| rank_mod_counts(a, p, check.n as usize, &table).map(Integer::from)).collect::<Result<_>>()?;
            t.check(rounded_counts(check).as_ref() == Some(&expected), || format!("N(a, {p}; {}) not recovered", check.n));
        }
    }
    Ok(t.finish(format!("p(n) for n <= {}; N(a, p; n) for 5-4 and 7-5", s.inversion_n)))
}

fn term_equality(s: &Sizes, rng: &mut ChaCha8Rng, cfg: &PrecisionConfig) -> Result<(u64, bool, String)> {
    let mut tol = Float::with_val(cfg.working_bits, 1);
    tol >>= cfg.working_bits / 2;
    let mut t = Tally::new();
    for _ in 0..s.term_pairs {
        let p = LEVELS[rng.random_range(0..LEVELS.len())];
        let ell = rng.random_range(1..p);
        let c = p * rng.random_range(1..=10);
        let n = rng.random_range(1..200);
        let b = bringmann_infinity_term(ell, p, c, n, cfg)?;
        let m = main_infinity_term(ell, p, c, n, cfg)?;
        let gap = Float::with_val(cfg.working_bits, (Complex::with_val(cfg.working_bits, b.conj_ref()) - &m).abs_ref());
        let scale = Float::with_val(cfg.working_bits, m.abs_ref()).max(&cfg.real(1));
        t.check(gap <= Float::with_val(cfg.working_bits, &tol * &scale), || format!("(l, p, c, n) = ({ell}, {p}, {c}, {n})"));
    }
    Ok(t.finish("to 2^(-P/2) relative".into()))
}

fn tail_decay(s: &Sizes, _: &mut ChaCha8Rng, cfg: &PrecisionConfig) -> Result<(u64, bool, String)> {
    const DOUBLINGS: u32 = 5;
    let mut t = Tally::new();
    let mut worst_ratio = 0.0f64;
    let ns: &[i64] = if s.term_pairs >= 100 { &[1, 2, 5] } else { &[1] };
    for p in [5, 7] {
        for &n in ns {
            let base = default_c_max(p, n);
            let report = MainFormula::new(p, base << DOUBLINGS, 1)?.evaluate(1, n, cfg)?;
            let at =
                |bound: i64| -> &Complex { &report.trace.iter().rev().find(|tp| tp.bound <= bound).expect("trace covers the bound").value };
            let increments: Vec<f64> = (0..DOUBLINGS)
                .map(|k| Complex::with_val(cfg.working_bits, at(base << (k + 1)) - at(base << k)).abs().real().to_f64())
                .collect();
            let early = increments[0].max(increments[1]);
            let late = increments[3].max(increments[4]);
            worst_ratio = worst_ratio.max(late / early);
            t.check(late < early, || format!("p={p} n={n}: increments {increments:.3?}"));
        }
    }
    Ok(t.finish(format!("largest late/early increment ratio {worst_ratio:.3}")))
}
