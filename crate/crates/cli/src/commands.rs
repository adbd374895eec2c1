use rankexact_core::arith::decimal;
use rankexact_core::geometry::{condition_set, max_r, x_r, x_r_surd, x_vector};
use rankexact_core::kloosterman::{
    bridge_infinity, bridge_zero, growth_profile, s_inf_inf, s_zero_inf, vanishing_combination_check, GrowthFamily, KloostermanValue,
    VanishingCase,
};
use rankexact_core::partition::{coefficient_oracle, dyson_identity_check, rank_table, DysonIdentity};
use rankexact_core::selftest::{run_modules, SelftestLevel};
use rankexact_core::series::{
    andrews_dragonette, bringmann_truncated, default_c_max, dyson_via_kloosterman, main_formula, mod3_series, rademacher_p, SeriesReport,
};
use rankexact_core::{Error, PrecisionConfig, Result};
use serde_json::{json, Value};

use crate::output::{complex_json, Outcome, Table};

/// Default truncation of the two double-precision series.
const MOCK_C_MAX: i64 = 100_000;

fn series_outcome(report: &SeriesReport) -> Result<Outcome> {
    let result = serde_json::to_value(report).map_err(|e| Error::BadInput(e.to_string()))?;
    let mut table = Table::new(vec!["target", "bound", "re", "im", "c_max", "a_max", "precision_bits"]);
    let a_max = report.a_max.map(|a| a.to_string()).unwrap_or_default();
    for point in &report.trace {
        table.push(vec![
            report.target.clone(),
            point.bound.to_string(),
            decimal(point.value.real()),
            decimal(point.value.imag()),
            report.c_max.to_string(),
            a_max.clone(),
            report.precision_bits.to_string(),
        ]);
    }
    Ok(Outcome { result, table, pass: None })
}

pub fn rank_table_cmd(n_max: usize) -> Result<Outcome> {
    let table = rank_table(n_max)?;
    let mut rows = Vec::with_capacity(n_max + 1);
    let mut csv = Table::new(vec!["n", "m", "count"]);
    for n in 0..=n_max {
        let signed = table.signed_row(n)?;
        for (m, count) in &signed {
            csv.push(vec![n.to_string(), m.to_string(), count.to_string()]);
        }
        rows.push(json!({
            "n": n,
            "total": table.total(n)?.to_string(),
            "counts": signed.iter().map(|(m, c)| json!([m, c.to_string()])).collect::<Vec<_>>(),
        }));
    }
    Ok(Outcome { result: json!({ "n_max": n_max, "rows": rows }), table: csv, pass: None })
}

pub fn coeff(ell: i64, b: i64, n: usize, cfg: &PrecisionConfig) -> Result<Outcome> {
    let table = rank_table(n)?;
    let v = coefficient_oracle(ell, b, n, &table, cfg)?;
    let value = decimal(&v.value);
    let counts: Vec<String> = v.residue_counts.iter().map(i128::to_string).collect();
    let mut csv = Table::new(vec!["ell", "b", "n", "value", "residue_counts", "precision_bits"]);
    csv.push(vec![ell.to_string(), b.to_string(), n.to_string(), value.clone(), counts.join(";"), cfg.working_bits.to_string()]);
    let result = json!({
        "target": format!("A({ell}/{b}; {n})"),
        "value": value,
        "residue_counts": counts,
        "precision_bits": cfg.working_bits,
    });
    Ok(Outcome { result, table: csv, pass: None })
}

/// `l = 0` gives `p(n)`; `p = 2, 3` use the single-modulus series; primes
/// `p >= 5` use the two-cusp formula.
pub fn exact(ell: i64, p: i64, n: i64, c_max: Option<i64>, a_max: Option<i64>, cfg: &PrecisionConfig) -> Result<Outcome> {
    if a_max.is_some() && (ell == 0 || p < 5) {
        return Err(Error::BadInput("--amax applies only to primes p >= 5".into()));
    }
    let report = match (ell, p) {
        (0, _) => {
            let default = 25.max((2.0 * (n.max(1) as f64).sqrt()).ceil() as i64);
            rademacher_p(n, c_max.unwrap_or(default), cfg)?
        }
        (1, 2) => andrews_dragonette(n, c_max.unwrap_or(MOCK_C_MAX), cfg)?,
        (1 | 2, 3) => mod3_series(n, c_max.unwrap_or(MOCK_C_MAX), cfg)?,
        (_, 2 | 3) => return Err(Error::BadInput(format!("need 1 <= l < {p}, got {ell}"))),
        _ => {
            let c_max = c_max.unwrap_or_else(|| default_c_max(p, n));
            main_formula(ell, p, n, c_max, a_max.unwrap_or(c_max / p), cfg)?
        }
    };
    series_outcome(&report)
}

pub fn bringmann(ell: i64, u: i64, n: i64, cfg: &PrecisionConfig) -> Result<Outcome> {
    series_outcome(&bringmann_truncated(ell, u, n, cfg)?)
}

#[derive(Clone, Copy, Debug, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Cusp pair (inf, inf): parameter `m`, modulus `c`.
    Inf,
    /// Cusp pair (0, inf): parameter `r`, modulus `a`.
    Zero,
}

impl Family {
    fn growth(self) -> GrowthFamily {
        match self {
            Self::Inf => GrowthFamily::SInfInf,
            Self::Zero => GrowthFamily::SZeroInf,
        }
    }
}

fn kloosterman_json(v: &KloostermanValue, cfg: &PrecisionConfig) -> Value {
    json!({
        "family": v.family,
        "ell": v.ell,
        "modulus": v.modulus,
        "value": complex_json(&v.value),
        "abs": decimal(&v.abs()),
        "term_count": v.term_count,
        "precision_bits": cfg.working_bits,
    })
}

pub fn kloosterman(family: Family, ell: i64, param: i64, n: i64, modulus: i64, p: i64, cfg: &PrecisionConfig) -> Result<Outcome> {
    let v = match family {
        Family::Inf => s_inf_inf(ell, param, n, modulus, p, cfg)?,
        Family::Zero => s_zero_inf(ell, n, modulus, p, param, cfg)?,
    };
    let mut csv = Table::new(vec!["family", "ell", "param", "n", "modulus", "p", "re", "im", "term_count", "precision_bits"]);
    csv.push(vec![
        format!("{family:?}").to_lowercase(),
        ell.to_string(),
        param.to_string(),
        n.to_string(),
        modulus.to_string(),
        p.to_string(),
        decimal(v.value.real()),
        decimal(v.value.imag()),
        v.term_count.to_string(),
        cfg.working_bits.to_string(),
    ]);
    Ok(Outcome { result: kloosterman_json(&v, cfg), table: csv, pass: None })
}

pub fn bridge_check(p: i64, c_multiples: i64, a_max: i64, ns: &[i64], tolerance: f64, cfg: &PrecisionConfig) -> Result<Outcome> {
    let mut csv = Table::new(vec!["identity", "ell", "modulus", "r", "n", "gap", "precision_bits"]);
    let mut rows = Vec::new();
    let mut worst = 0.0f64;
    let mut record = |identity: &str, ell: i64, modulus: i64, r: Option<i64>, n: i64, gap: rankexact_core::BigFloat| {
        let g = gap.to_f64();
        worst = worst.max(g);
        let r_text = r.map(|r| r.to_string()).unwrap_or_default();
        csv.push(vec![
            identity.into(),
            ell.to_string(),
            modulus.to_string(),
            r_text,
            n.to_string(),
            decimal(&gap),
            cfg.working_bits.to_string(),
        ]);
        rows.push(json!({ "identity": identity, "ell": ell, "modulus": modulus, "r": r, "n": n, "gap": decimal(&gap) }));
    };
    for &n in ns {
        for c in (1..=c_multiples).map(|k| k * p) {
            for ell in 1..p {
                record("infinity", ell, c, None, n, bridge_infinity(ell, p, c, n, cfg)?);
            }
        }
        for r in 0..=max_r(p)?.max(0) {
            for a in (1..=a_max).filter(|a| a % p != 0) {
                for ell in 1..p {
                    if let Some(gap) = bridge_zero(ell, p, a, r, n, cfg)? {
                        record("zero", ell, a, Some(r), n, gap);
                    }
                }
            }
        }
    }
    let pass = worst < tolerance;
    let result = json!({
        "p": p,
        "c_max": c_multiples * p,
        "a_max": a_max,
        "tolerance": tolerance.to_string(),
        "worst_gap": format!("{worst:e}"),
        "precision_bits": cfg.working_bits,
        "pass": pass,
        "checks": rows,
    });
    Ok(Outcome { result, table: csv, pass: Some(pass) })
}

pub fn vanishing(case: &str, n: i64, c: i64, cfg: &PrecisionConfig) -> Result<Outcome> {
    let case: VanishingCase = case.parse()?;
    let r = vanishing_combination_check(case, n, c, cfg)?;
    let mut result = serde_json::to_value(&r).map_err(|e| Error::BadInput(e.to_string()))?;
    result["precision_bits"] = json!(cfg.working_bits);
    let control = r.control.as_ref().map(decimal).unwrap_or_default();
    let mut csv = Table::new(vec!["case", "n", "c", "argument", "residual", "floor", "term_count", "control", "pass", "precision_bits"]);
    csv.push(vec![
        case.tag().into(),
        n.to_string(),
        c.to_string(),
        r.argument.to_string(),
        decimal(&r.residual),
        decimal(&r.floor),
        r.term_count.to_string(),
        control,
        r.pass.to_string(),
        cfg.working_bits.to_string(),
    ]);
    Ok(Outcome { result, table: csv, pass: Some(r.pass) })
}

pub fn dyson(identity: &str, n_max: usize, analytic: bool, cfg: &PrecisionConfig) -> Result<Outcome> {
    let id: DysonIdentity = identity.parse()?;
    let table = rank_table(n_max)?;
    let report = dyson_identity_check(id, n_max, &table)?;
    let mut csv = Table::new(vec!["source", "n", "counts", "residual", "pass"]);
    for c in &report.checks {
        let counts: Vec<String> = c.counts.iter().map(i128::to_string).collect();
        csv.push(vec!["combinatorial".into(), c.n.to_string(), counts.join(";"), "0".into(), c.pass.to_string()]);
    }
    let mut pass = report.pass;
    let analytic_report = if analytic {
        let (p, k) = id.progression();
        let a = dyson_via_kloosterman(p, k, n_max as i64, cfg)?;
        for c in &a.checks {
            let counts: Vec<String> = c.counts.iter().map(|x| format!("{x:.6}")).collect();
            csv.push(vec!["analytic".into(), c.n.to_string(), counts.join(";"), format!("{:e}", c.residual), c.pass.to_string()]);
        }
        pass &= a.pass;
        Some(a)
    } else {
        None
    };
    let result = json!({
        "combinatorial": report,
        "analytic": analytic_report,
        "precision_bits": cfg.working_bits,
        "pass": pass,
    });
    Ok(Outcome { result, table: csv, pass: Some(pass) })
}

pub fn growth(family: Family, ell: i64, param: i64, n: i64, p: i64, x_max: i64) -> Result<Outcome> {
    let profile = growth_profile(family.growth(), ell, param, n, p, x_max, &[])?;
    let bits = match family {
        Family::Inf => 53,
        Family::Zero => 64,
    };
    let mut result = serde_json::to_value(&profile).map_err(|e| Error::BadInput(e.to_string()))?;
    result["precision_bits"] = json!(bits);
    result["x_max"] = json!(x_max);
    let mut csv = Table::new(vec!["x", "re", "im", "x_max", "precision_bits"]);
    for (x, (re, im)) in profile.grid.iter().zip(&profile.partial_sums) {
        csv.push(vec![x.to_string(), format!("{re:e}"), format!("{im:e}"), x_max.to_string(), bits.to_string()]);
    }
    Ok(Outcome { result, table: csv, pass: None })
}

pub fn selftest(level: SelftestLevel, modules: &[String], seed: u64, cfg: &PrecisionConfig) -> Result<Outcome> {
    let names: Vec<&str> = modules.iter().map(String::as_str).collect();
    let report = run_modules(level, seed, cfg, &names)?;
    let mut csv = Table::new(vec!["module", "check", "cases", "pass", "detail", "elapsed_ms"]);
    for c in &report.checks {
        csv.push(vec![c.module.into(), c.name.into(), c.cases.to_string(), c.pass.to_string(), c.detail.clone(), c.elapsed_ms.to_string()]);
    }
    let result = serde_json::to_value(&report).map_err(|e| Error::BadInput(e.to_string()))?;
    Ok(Outcome { result, table: csv, pass: Some(report.pass) })
}

pub fn geometry(p: i64, a_max: Option<i64>, cfg: &PrecisionConfig) -> Result<Outcome> {
    let top = max_r(p)?;
    let a_max = a_max.unwrap_or(2 * p);
    let mut csv = Table::new(vec!["p", "r", "x_r", "a", "members", "precision_bits"]);
    let mut levels = Vec::new();
    for r in 0..=top {
        let x = decimal(&x_r(r as u32, cfg));
        let (rational, coefficient, radicand) = x_r_surd(r as u32);
        let mut sets = Vec::new();
        for a in (1..=a_max).filter(|a| a % p != 0) {
            let set = condition_set(p, a, r)?;
            let members: Vec<String> = set.members.iter().map(i64::to_string).collect();
            csv.push(vec![p.to_string(), r.to_string(), x.clone(), a.to_string(), members.join(";"), cfg.working_bits.to_string()]);
            sets.push(set);
        }
        levels.push(json!({
            "r": r,
            "x_r": x,
            "x_r_exact": format!("{rational} + ({coefficient}) sqrt({radicand})"),
            "x_vector": x_vector(p, r)?,
            "condition_sets": sets,
        }));
    }
    let result = json!({ "p": p, "max_r": top, "a_max": a_max, "precision_bits": cfg.working_bits, "levels": levels });
    Ok(Outcome { result, table: csv, pass: None })
}
