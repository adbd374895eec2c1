//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Criterion 5 is build-breaking; every other line is reported and the
//! process exits zero. Positional arguments restrict the run to the given
//! criterion numbers.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::{Float, Rational};

use rankexact_core::eta::{cocycle_w, UnimodularMatrix};
use rankexact_core::geometry::{max_r, x_r, x_r_surd};
use rankexact_core::kloosterman::{bridge_infinity, bridge_zero, growth_profile, vanishing_combination_check, GrowthFamily, VanishingCase};
use rankexact_core::mup::Gamma0Sampler;
use rankexact_core::partition::{dyson_identity_check, partition_numbers, rank_table, DysonIdentity};
use rankexact_core::selftest::{run_modules, SelftestLevel};
use rankexact_core::series::{andrews_dragonette_batch, dyson_via_kloosterman, mod3_series_batch, rademacher_p, MainFormula};
use rankexact_core::{PrecisionConfig, Result};

const AD_C_MAX: i64 = 2_000_000;
const MOD3_C_MAX: i64 = 6_000_000;
const LEVELS: [i64; 4] = [5, 7, 11, 13];

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Result<Verdict> {
    Ok(Verdict { pass, detail: detail.into() })
}

fn within(limit: Duration, elapsed: Duration) -> bool {
    elapsed < limit
}

fn rademacher(cfg: &PrecisionConfig) -> Result<Verdict> {
    let started = Instant::now();
    let partitions = partition_numbers(200);
    let mut wrong = Vec::new();
    for n in 1..=200 {
        let r = rademacher_p(n, 25, cfg)?;
        if r.nearest_integer.as_ref() != Some(&partitions[n as usize]) {
            wrong.push(n);
        }
    }
    let p4 = rademacher_p(4, 25, cfg)?.nearest_integer;
    let p100 = rademacher_p(100, 25, cfg)?.nearest_integer;
    let elapsed = started.elapsed();
    let anchors = p4.as_ref().is_some_and(|v| *v == 5) && p100.as_ref().is_some_and(|v| *v == 190_569_292);
    verdict(
        wrong.is_empty() && anchors && within(Duration::from_secs(10), elapsed),
        format!("n <= 200 at c_max 25, mismatches {wrong:?}, p(4) = {p4:?}, p(100) = {p100:?}, {elapsed:.2?}"),
    )
}

fn worst_gap(reports: &[rankexact_core::series::SeriesReport]) -> (f64, i64) {
    reports.iter().map(|r| (r.gap_f64().unwrap_or(f64::INFINITY), r.params[0].1.parse().unwrap_or(0))).fold((0.0, 0), |a, b| {
        if b.0 > a.0 {
            b
        } else {
            a
        }
    })
}

fn andrews_dragonette(cfg: &PrecisionConfig) -> Result<Verdict> {
    let started = Instant::now();
    let ns: Vec<i64> = (1..=50).collect();
    let reports = andrews_dragonette_batch(&ns, AD_C_MAX, cfg)?;
    let elapsed = started.elapsed();
    let (gap, at) = worst_gap(&reports);
    verdict(
        gap < 1e-3 && within(Duration::from_secs(30), elapsed),
        format!("n <= 50 at c_max {AD_C_MAX}, worst gap {gap:.3e} at n = {at}, {elapsed:.2?}"),
    )
}

fn mod3(cfg: &PrecisionConfig) -> Result<Verdict> {
    let started = Instant::now();
    let ns: Vec<i64> = (1..=50).collect();
    let reports = mod3_series_batch(&ns, MOD3_C_MAX, cfg)?;
    let elapsed = started.elapsed();
    let (gap, at) = worst_gap(&reports);
    verdict(gap < 1e-3, format!("n <= 50 at c_max {MOD3_C_MAX}, worst gap {gap:.3e} at n = {at}, {elapsed:.2?}"))
}

fn main_formula_check(cfg: &PrecisionConfig) -> Result<Verdict> {
    let started = Instant::now();
    let mut failures = 0;
    let mut total = 0;
    let mut worst = (0.0f64, 0, 0, 0);
    let mut structure = true;
    for p in LEVELS {
        let formula = MainFormula::new(p, 70 * p, 70)?;
        for ell in 1..p {
            let zero = formula.zero_cusp_terms(ell)?;
            match p {
                5 => structure &= zero.is_empty(),
                7 => structure &= zero.iter().all(|t| matches!(t.reduced, 1 | 6) && t.delta == (1, 1176)),
                _ => {}
            }
            for n in 1..=30 {
                let gap = formula.evaluate(ell, n, cfg)?.gap_f64().unwrap_or(f64::INFINITY);
                total += 1;
                if gap >= 1e-2 {
                    failures += 1;
                }
                if gap > worst.0 {
                    worst = (gap, p, ell, n);
                }
            }
        }
    }
    let elapsed = started.elapsed();
    verdict(
        failures == 0 && structure && within(Duration::from_secs(300), elapsed),
        format!(
            "{failures}/{total} gaps >= 1e-2, worst {:.3} at (p, l, n) = ({}, {}, {}); zero-cusp structure {}; {elapsed:.2?}",
            worst.0,
            worst.1,
            worst.2,
            worst.3,
            if structure { "as stated" } else { "differs" }
        ),
    )
}

fn bridges(cfg: &PrecisionConfig) -> Result<Verdict> {
    let started = Instant::now();
    let tol = Float::with_val(cfg.working_bits, Float::parse("1e-40").expect("literal"));
    let mut worst = cfg.real(0);
    let mut cases = 0u64;
    let mut bad = 0u64;
    let mut record = |gap: Float| {
        cases += 1;
        if gap >= tol {
            bad += 1;
        }
        if gap > worst {
            worst = gap;
        }
    };
    for p in LEVELS {
        for n in [0, 1, 6] {
            for c in (1..=20).map(|k| k * p) {
                for ell in 1..p {
                    record(bridge_infinity(ell, p, c, n, cfg)?);
                }
            }
            for r in 0..=max_r(p)?.max(0) {
                for a in (1..=200).filter(|a| a % p != 0) {
                    for ell in 1..p {
                        if let Some(gap) = bridge_zero(ell, p, a, r, n, cfg)? {
                            record(gap);
                        }
                    }
                }
            }
        }
    }
    verdict(bad == 0, format!("{cases} tuples, worst {:.3e}, {:.2?}", worst.to_f64(), started.elapsed()))
}

fn vanishing(cfg: &PrecisionConfig) -> Result<Verdict> {
    let started = Instant::now();
    let mut cases = 0u64;
    let mut first_failure = None;
    let mut quiet_controls = Vec::new();
    for case in VanishingCase::ALL {
        let (p, _) = case.progression();
        let mut control_peak: Option<f64> = None;
        for n in 0..=10 {
            for c in (p..=500).step_by(p as usize) {
                let r = vanishing_combination_check(case, n, c, cfg)?;
                cases += 1;
                if !r.pass && first_failure.is_none() {
                    first_failure = Some(format!("{case} n={n} c={c}: residual {:.3e}", r.residual.to_f64()));
                }
                if let Some(ctl) = &r.control {
                    control_peak = Some(control_peak.unwrap_or(0.0).max(ctl.to_f64()));
                }
            }
        }
        if control_peak.is_some_and(|peak| peak < 1e-3) {
            quiet_controls.push(case.tag());
        }
    }
    let pass = first_failure.is_none() && quiet_controls.is_empty();
    let detail = match first_failure {
        Some(f) => f,
        None => format!(
            "{cases} (case, n, c) below the floor, scrambled controls above 1e-3 except {quiet_controls:?}, {:.2?}",
            started.elapsed()
        ),
    };
    verdict(pass, detail)
}

fn dyson(cfg: &PrecisionConfig) -> Result<Verdict> {
    let started = Instant::now();
    let table = rank_table(300)?;
    let mut checks = 0;
    let mut failed = Vec::new();
    for id in DysonIdentity::ALL {
        let report = dyson_identity_check(id, 300, &table)?;
        checks += report.checks.len();
        if !report.pass {
            failed.push(id.to_string());
        }
    }
    let mut analytic = Vec::new();
    for (p, k) in [(5, 4), (7, 5)] {
        let report = dyson_via_kloosterman(p, k, 100 + k, cfg)?;
        let residual = report.checks.iter().map(|c| c.residual).fold(0.0, f64::max);
        analytic.push(format!("{p}-{k}: {} arguments, residual {residual:.2e}", report.checks.len()));
        if !report.pass {
            failed.push(format!("{p}-{k} analytic"));
        }
    }
    verdict(
        failed.is_empty(),
        format!(
            "{checks} combinatorial checks for arguments <= 300; {}; failures {failed:?}; {:.2?}",
            analytic.join(", "),
            started.elapsed()
        ),
    )
}

fn multipliers(cfg: &PrecisionConfig) -> Result<Verdict> {
    let started = Instant::now();
    let report = run_modules(SelftestLevel::Full, 20_240_601, cfg, &["eta-multiplier", "mup-multiplier"])?;
    let failed: Vec<&str> = report.checks.iter().filter(|c| !c.pass).map(|c| c.name).collect();
    let half = Rational::from((1, 2));
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut w_cases = 0;
    let mut w_ok = true;
    for p in [5, 7, 11] {
        let mut sampler = Gamma0Sampler::new(p, rng.random());
        let mut taken = 0;
        while taken < 500 {
            let g = sampler.sample();
            if g.a <= 0 || g.c <= 0 {
                continue;
            }
            taken += 1;
            w_cases += 1;
            w_ok &= cocycle_w(&half, &UnimodularMatrix::S, &g, cfg)?.is_zero();
        }
    }
    let suites = report.checks.iter().map(|c| format!("{} ({})", c.name, c.cases)).collect::<Vec<_>>().join(", ");
    verdict(failed.is_empty() && w_ok, format!("{suites}; w(S, g) = 1 on {w_cases} samples: {w_ok}; {:.2?}", started.elapsed()))
}

fn geometry(cfg: &PrecisionConfig) -> Result<Verdict> {
    let table: [(i64, i64, i64); 4] = [(7, 31, 0), (37, 59, 1), (61, 83, 2), (89, 107, 3)];
    let mut mismatches = Vec::new();
    for (lo, hi, want) in table {
        for p in (lo..=hi).filter(|&p| rankexact_core::arith::modular::is_prime(p)) {
            let got = max_r(p)?;
            if got != want {
                mismatches.push((p, got));
            }
        }
    }
    let (rational, coefficient, radicand) = x_r_surd(0);
    let x0_exact = rational == (1, 6) && (coefficient == 0 || radicand == 0);
    let inv_x1 = Float::with_val(cfg.working_bits, 1 / x_r(1, cfg)).to_f64();
    let x1_ok = (inv_x1 - 34.9706).abs() <= 5e-5;
    verdict(
        mismatches.is_empty() && x0_exact && x1_ok,
        format!("max_r mismatches {mismatches:?}; x_0 = 1/6 exactly: {x0_exact}; 1/x_1 = {inv_x1:.6}"),
    )
}

fn growth() -> Result<Verdict> {
    let mut slopes = Vec::new();
    let mut pass = true;
    for p in [5, 7] {
        for n in [1, 2] {
            let profile = growth_profile(GrowthFamily::SInfInf, 1, 0, n, p, 10_000, &[])?;
            pass &= profile.slope <= 0.5;
            slopes.push(format!("(p={p}, n={n}) {:.3}", profile.slope));
        }
    }
    let note = if pass { "" } else { "; investigation needed" };
    verdict(pass, format!("report-only, fitted slopes on [1e3, 1e4]: {}{note}", slopes.join(", ")))
}

fn main() -> ExitCode {
    let cfg = PrecisionConfig::default();
    let criteria: [(&str, &dyn Fn() -> Result<Verdict>); 10] = [
        ("Rademacher reproduction", &|| rademacher(&cfg)),
        ("A(1/2; n) series", &|| andrews_dragonette(&cfg)),
        ("A(1/3; n) series", &|| mod3(&cfg)),
        ("main formula", &|| main_formula_check(&cfg)),
        ("bridge identities", &|| bridges(&cfg)),
        ("vanishing suite", &|| vanishing(&cfg)),
        ("Dyson identities", &|| dyson(&cfg)),
        ("multiplier suite", &|| multipliers(&cfg)),
        ("rank-geometry table", &|| geometry(&cfg)),
        ("growth profiles", &growth),
    ];
    // optional positional arguments select criteria by number
    let selected: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut build_breaking = false;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let number = i + 1;
        if !selected.is_empty() && !selected.contains(&number) {
            continue;
        }
        let v = run().unwrap_or_else(|e| Verdict { pass: false, detail: format!("error: {e}") });
        println!("{} criterion {number:>2} {name}: {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
        if number == 5 && !v.pass {
            build_breaking = true;
        }
    }
    if build_breaking {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
