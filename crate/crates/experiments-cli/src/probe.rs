//! Averages along arithmetic progressions of horocycle time, set against the
//! cusp excursion of the time-`log T` geodesic push.

use diophantine::RealInput;
use group_core::{cusp_excursion, geodesic, injectivity_eta, reduce_dd, Dd};
use periodic_orbits::{horocycle_base, ordered_sum, TestFn};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::config::{Experiment, ExperimentConfig, PointSpec, Real};
use crate::orbit::{resolve_point, ResolvedPoint, Times};
use crate::report::{jnum, num, opt, Report};
use crate::{parse_test_fn, CliError};

/// One `(T, K)` evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbeRow {
    pub t: u64,
    pub k: u64,
    pub average: f64,
    pub r: f64,
    /// `r / (T eta(g_{log T} q))`, when the injectivity radius is computable.
    pub eta_ratio: Option<f64>,
    /// `K^{1/2} ln^{3/2}(r + 2)`, the envelope without its `r^{-beta/2}` factor.
    pub envelope_unit: f64,
}

/// `(K/T) sum_{0 <= Kj < T} (f - mean f)(q u0(Kj))` with `r = T e^{-dist(g_{log T} q)}`.
pub fn probe_point(point: &ResolvedPoint, f: &TestFn, t: u64, k: u64) -> Result<ProbeRow, CliError> {
    if !(t > k && k >= 1) {
        return Err(CliError::Precondition(format!("need T > K >= 1, got T = {t}, K = {k}")));
    }
    let mean = f.haar_exact().ok_or_else(|| CliError::Precondition(format!("{f} has no reference mean")))?;
    let orbit = point.orbit(Times::Linear { c: Dd::new(k as f64) });
    let count = t.div_ceil(k);
    let sum = ordered_sum(0, count, |j| Ok::<f64, CliError>(f.eval(&orbit.point(j)?) - mean))?;
    let average = (sum / Dd::new(count as f64)).to_f64();
    let lattice = reduce_dd(&horocycle_base(point.x).mul(&point.right))?;
    let log_t = (t as f64).ln();
    let dist = cusp_excursion(&lattice, log_t)?;
    let r = t as f64 * (-dist).exp();
    let eta_ratio =
        geodesic(&lattice, log_t).ok().and_then(|p| injectivity_eta(&p).ok()).map(|eta| r / (t as f64 * eta));
    let envelope_unit = (k as f64).sqrt() * (r + 2.0).ln().powf(1.5);
    Ok(ProbeRow { t, k, average, r, eta_ratio, envelope_unit })
}

/// Least-squares `beta` in `|avg| ~ C K^{1/2} ln^{3/2}(r+2) r^{-beta/2}` over rows with `r > 1`.
pub fn fit_beta(rows: &[ProbeRow]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.r > 1.0 && r.average != 0.0)
        .map(|r| (r.r.ln(), (r.average.abs() / r.envelope_unit).ln()))
        .collect();
    if pts.len() < 3 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx < 1e-12 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(-2.0 * sxy / sxx)
}

pub fn effective_probe(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let f = match &cfg.test_functions {
        Some(v) if !v.is_empty() => parse_test_fn(&v[0])?,
        _ => parse_test_fn("bump0")?,
    };
    let t_grid = cfg.grid.clone().unwrap_or_else(|| vec![1_000, 10_000, 100_000]);
    let k_grid: Vec<u64> = match &cfg.k_grid {
        Some(v) => v
            .iter()
            .map(|&k| u64::try_from(k).map_err(|_| CliError::Config("K must be positive".into())))
            .collect::<Result<_, _>>()?,
        None => vec![1, 2, 4],
    };
    if t_grid.iter().any(|&t| t > cfg.max_n()) {
        return Err(CliError::Precondition("T exceeds max_n".into()));
    }
    let depth = cfg.cf_depth.unwrap_or(40);
    let mut points = Vec::new();
    let first = if cfg.point == PointSpec::default() {
        PointSpec { x: Some(Real::new("surd(-1,2,1)")), ..Default::default() }
    } else {
        cfg.point.clone()
    };
    points.push(resolve_point(&first, &crate::config::ConstructSpec::default_100(), depth)?);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.random_points.unwrap_or(2) {
        let x: f64 = rng.gen_range(0.0..1.0);
        points.push(ResolvedPoint::from_x(RealInput::Float(x), depth, format!("random x={x}")));
    }

    let mut report =
        Report::new(Experiment::EffectiveProbe, &["point", "T", "K", "average", "r", "eta_ratio", "envelope_unit"]);
    let mut betas = Vec::new();
    let mut eta_ratios_ok = true;
    for p in &points {
        let mut rows = Vec::new();
        for &t in &t_grid {
            for &k in &k_grid {
                if k >= t {
                    continue;
                }
                let row = probe_point(p, &f, t, k)?;
                if let Some(e) = row.eta_ratio {
                    eta_ratios_ok &= (0.1..=10.0).contains(&e);
                }
                report.push(vec![
                    p.label.clone(),
                    t.to_string(),
                    k.to_string(),
                    num(row.average),
                    num(row.r),
                    opt(row.eta_ratio),
                    num(row.envelope_unit),
                ]);
                rows.push(row);
            }
        }
        betas.push(json!({ "point": p.label, "beta_hat": fit_beta(&rows).map_or(Value::Null, jnum) }));
    }
    report.set("test_fn", json!(f.to_string()));
    report.set("beta_fits", Value::Array(betas));
    report.set("eta_ratios_within_10x", json!(eta_ratios_ok));
    report.note("beta is fitted, not asserted");
    Ok(report)
}
