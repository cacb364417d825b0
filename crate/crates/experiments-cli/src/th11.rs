//! Sparse power times `c n^{1+gamma}` from a point with very good rational approximations.

use diophantine::{lattice_dioph_type, ln_big, RealInput};
use group_core::reduce_dd;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, ToPrimitive};
use periodic_orbits::{
    approx_periodic_sequence, error_budget_p23, horocycle_base, period_integral_translated, ApproxLevel, OrbitError,
    TestFn,
};
use serde_json::{json, Value};

use crate::config::{ConstructSpec, Experiment, ExperimentConfig};
use crate::orbit::{checkpoints, orbit_pass, resolve_point, Checkpoint, CoverageGrid, ResolvedPoint, Times};
use crate::report::{jnum, num, opt, short_int, Report};
use crate::{test_fns, CliError};

pub const TH_COLUMNS: [&str; 13] = [
    "level",
    "q",
    "n",
    "n_scheduled_log10",
    "test_fn",
    "value",
    "haar",
    "reference",
    "deficit",
    "budget",
    "ratio",
    "coverage",
    "clamped",
];

/// Largest denominator whose period integral is computed.
pub const MAX_PERIOD_Q: u64 = 1024;
pub const PERIOD_TOL: f64 = 1e-6;

pub fn kappa_of(cfg: &ExperimentConfig, default: &str) -> Result<BigRational, CliError> {
    match cfg.real_or(&cfg.kappa, default)?.exact()? {
        RealInput::Rational(k) => Ok(k),
        _ => Err(CliError::Config("kappa must be a decimal".into())),
    }
}

/// A convergent level with its scheduled and used orbit lengths.
#[derive(Clone, Debug)]
pub struct ScheduledLevel {
    pub level: ApproxLevel,
    pub ln_q: f64,
    pub ln_n_scheduled: f64,
    pub n: u64,
    pub feasible: bool,
}

/// `N_k = q_k^{power}`, clamped to `max_n`.
pub fn schedule(levels: Vec<ApproxLevel>, power: u32, max_n: u64) -> Vec<ScheduledLevel> {
    levels
        .into_iter()
        .map(|level| {
            let ln_q = ln_big(&level.point.q);
            let small = level.point.q.bits() * power as u64 <= 128;
            let n = small.then(|| Pow::pow(&level.point.q, power).to_u64()).flatten().filter(|&n| n <= max_n);
            ScheduledLevel {
                level,
                ln_q,
                ln_n_scheduled: power as f64 * ln_q,
                n: n.unwrap_or(max_n),
                feasible: n.is_some(),
            }
        })
        .collect()
}

/// Period integrals of every test function for the level, when its period is short enough.
pub fn period_refs(fns: &[TestFn], lv: &ScheduledLevel, point: &ResolvedPoint) -> Result<Vec<Option<f64>>, CliError> {
    if lv.level.point.q > BigInt::from(MAX_PERIOD_Q) {
        return Ok(vec![None; fns.len()]);
    }
    fns.iter()
        .map(|f| Ok(Some(period_integral_translated(f, &lv.level.point, &point.right, 0, PERIOD_TOL)?.value)))
        .collect()
}

fn at(pass: &[Checkpoint], n: u64) -> &Checkpoint {
    pass.iter().find(|c| c.n == n).expect("checkpoint scheduled")
}

pub fn run_th11(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let gamma = cfg.real_or(&cfg.gamma, "0.05")?;
    let g = gamma.f64()?;
    if !(g > 0.0 && g < 0.1) {
        return Err(CliError::Precondition(format!("gamma = {g} must lie in (0, 0.1)")));
    }
    let c = cfg.real_or(&cfg.c, "1")?.dd()?;
    if !(c.hi > 0.0) {
        return Err(CliError::Precondition("c must be positive".into()));
    }
    let kappa = kappa_of(cfg, "0.98")?;
    let point = resolve_point(&cfg.point, &ConstructSpec::default_100(), cfg.cf_depth.unwrap_or(40))?;
    let fns = test_fns(cfg)?;
    let max_n = cfg.max_n();
    let grid = CoverageGrid { cells: cfg.cells.unwrap_or(32) };
    let mut report = Report::new(Experiment::Th11, &TH_COLUMNS);

    let lattice = reduce_dd(&horocycle_base(point.x).mul(&point.right))?;
    let profile = lattice_dioph_type(&lattice, 6.0, 24).ok();
    report.set("kappa_hat", profile.as_ref().map_or(Value::Null, |p| jnum(p.kappa_hat)));
    report.set("kappa_tail", profile.as_ref().map_or(Value::Null, |p| jnum(p.kappa_tail)));
    report.set("point", json!(point.label));

    let levels = match point.cf.as_ref().map(|cf| approx_periodic_sequence(cf, &kappa)) {
        Some(Ok(l)) => l,
        Some(Err(OrbitError::NoApproximantFound { .. })) | None => Vec::new(),
        Some(Err(e)) => return Err(e.into()),
    };
    let orbit = point.orbit(Times::Power { c, gamma: gamma.dd()? });

    if levels.is_empty() {
        // No approximating periodic points: compare with Haar only.
        report.set("case", json!("diophantine"));
        let n = cfg.n.unwrap_or(1_000_000).min(max_n);
        let pass = orbit_pass(&orbit, &fns, &checkpoints(n, &[]), grid)?;
        for cp in &pass {
            for (f, &avg) in fns.iter().zip(&cp.averages) {
                let haar = f.haar_exact();
                report.push(vec![
                    String::new(),
                    String::new(),
                    cp.n.to_string(),
                    String::new(),
                    f.to_string(),
                    num(avg),
                    opt(haar),
                    String::new(),
                    opt(haar.map(|h| (avg - h).abs())),
                    String::new(),
                    String::new(),
                    num(cp.coverage),
                    "false".into(),
                ]);
            }
        }
        report.set("coverage", jnum(pass.last().map_or(0.0, |c| c.coverage)));
        return Ok(report);
    }

    report.set("case", json!("approximable"));
    let sched = schedule(levels, 20, max_n);
    report.clamped = sched.iter().any(|l| !l.feasible);
    if report.clamped {
        report.note("some scheduled N = d(q)^10 exceed max_n and were clamped");
    }
    let extra: Vec<u64> = sched.iter().map(|l| l.n).collect();
    let top = *extra.iter().max().expect("nonempty");
    let pass = orbit_pass(&orbit, &fns, &checkpoints(top, &extra), grid)?;

    let mut fitted: f64 = 0.0;
    let mut level_info = Vec::new();
    for lv in &sched {
        let refs = period_refs(&fns, lv, &point)?;
        let cp = at(&pass, lv.n);
        let ln_d_q = 2.0 * lv.ln_q;
        let budget = error_budget_p23((lv.n as f64).ln(), g, lv.level.ln_gap, ln_d_q);
        for ((f, &avg), reference) in fns.iter().zip(&cp.averages).zip(&refs) {
            let haar = f.haar_exact();
            let deficit = reference.or(haar).map(|r| (avg - r).abs());
            let b = budget.total() * f.c1_norm();
            let ratio = deficit.map(|d| d / b);
            if lv.feasible && *f != TestFn::One {
                fitted = fitted.max(ratio.unwrap_or(0.0));
            }
            report.push(vec![
                lv.level.k.to_string(),
                short_int(&lv.level.point.q),
                lv.n.to_string(),
                num(lv.ln_n_scheduled / std::f64::consts::LN_10),
                f.to_string(),
                num(avg),
                opt(haar),
                opt(*reference),
                opt(deficit),
                num(b),
                opt(ratio),
                num(cp.coverage),
                (!lv.feasible).to_string(),
            ]);
        }
        level_info.push(json!({
            "k": lv.level.k,
            "q": short_int(&lv.level.point.q),
            "ln_gap": jnum(lv.level.ln_gap),
            "ln_ratio": jnum(lv.level.ln_ratio),
            "n": lv.n,
            "feasible": lv.feasible,
            "ln_budget": jnum(budget.ln_total),
        }));
    }
    report.set("levels", Value::Array(level_info));
    report.set("fitted_constant", jnum(fitted));
    report.set("coverage", jnum(pass.last().map_or(0.0, |c| c.coverage)));
    Ok(report)
}
