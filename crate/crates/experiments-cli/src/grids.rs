//! Parameter-grid experiments: exponential sums, sieve tables, continued
//! fractions and closed-horocycle integrals.

use diophantine::{
    cf_expand, convergents, dioph_type_estimate, is_badly_approximable, lambda_partial, lattice_dioph_type, ln_big,
};
use expsum::{periodic_deficit_power_grid, power_sum_grid, quad_sum_grid, vdc_differenced, vdc_expanded, FourierPoly};
use group_core::reduce_dd;
use linear_sieve::{empirical_u1, jr_bounds, mertens_check, mertens_ratio, SieveProblem, Weights};
use periodic_orbits::{haar_integral, horocycle_base, make_periodic_point, period_integral};
use serde_json::{json, Value};
use sparse_sequences::rough_count;

use crate::config::{Experiment, ExperimentConfig, PointSpec, Real};
use crate::report::{jnum, num, Report};
use crate::{test_fns, CliError};

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_slope(pts: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = pts.iter().filter(|p| p.0 > 0.0 && p.1 > 0.0).map(|p| (p.0.ln(), p.1.ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

pub fn median(v: &[f64]) -> f64 {
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len();
    match n {
        0 => f64::NAN,
        _ if n % 2 == 1 => s[n / 2],
        _ => (s[n / 2 - 1] + s[n / 2]) / 2.0,
    }
}

/// `round(10^{a + j/4})` for `j = 0..=4(b - a)`.
pub fn quarter_decades(a: u32, b: u32) -> Vec<u64> {
    (0..=4 * (b - a)).map(|j| 10f64.powf(a as f64 + j as f64 / 4.0).round() as u64).collect()
}

/// The trigonometric polynomial `1 + sum_{k=1}^5 2^{1-k} cos(2 pi k x)`.
pub fn five_frequency_poly() -> FourierPoly {
    let terms: Vec<(i64, f64, f64)> = (1..=5).map(|k| (k, 0.5f64.powi(k as i32 - 1), 0.0)).collect();
    FourierPoly::from_cos_sin(1.0, 1.0, &terms).expect("real coefficients")
}

/// Largest `deficit / bound` over the first half of the grid, and over all of it.
pub fn fitted_constants(pairs: &[(f64, f64)]) -> (f64, f64) {
    let ratio = |p: &(f64, f64)| p.0 / p.1;
    let half = pairs.len().div_ceil(2);
    let first = pairs[..half].iter().map(ratio).fold(0.0, f64::max);
    let full = pairs.iter().map(ratio).fold(0.0, f64::max);
    (first, full)
}

pub fn expsum_grid(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let gamma = cfg.real_or(&cfg.gamma, "0.1")?.dd()?;
    let c = cfg.real_or(&cfg.c, "1")?.dd()?;
    let alpha = cfg.real_or(&cfg.alpha, "sqrt(2)")?.dd()?;
    let eps = cfg.real_or(&cfg.eps, "0.01")?.f64()?;
    if !(gamma.to_f64() > 0.0 && gamma.to_f64() < 1.0) || !(c.to_f64() > 0.0) {
        return Err(CliError::Precondition("need 0 < gamma < 1 and c > 0".into()));
    }
    let ks = cfg.k_grid.clone().unwrap_or_else(|| (1..=8).collect());
    if ks.contains(&0) {
        return Err(CliError::Precondition("frequency 0 is not oscillatory".into()));
    }
    let power_grid = cfg.grid.clone().unwrap_or_else(|| (12..=22).map(|e| 1u64 << e).collect());
    let quad_grid = quarter_decades(3, 6);
    let max = power_grid.iter().chain(&quad_grid).copied().max().unwrap_or(0);
    if max > cfg.max_n() {
        return Err(CliError::Precondition(format!("grid reaches {max}, above max_n")));
    }
    let mut report = Report::new(Experiment::ExpsumGrid, &["family", "k", "n", "modulus", "bound", "ratio"]);

    let power = power_sum_grid(c, gamma, &ks, 1.0, &power_grid);
    let mut slopes = Vec::new();
    let mut all_ratios = Vec::new();
    let mut pooled = Vec::new();
    for (&k, row) in ks.iter().zip(&power) {
        for s in row {
            report.push(vec![
                "power".into(),
                k.to_string(),
                s.n_terms.to_string(),
                num(s.modulus),
                num(s.bound),
                num(s.ratio),
            ]);
            all_ratios.push(s.ratio);
            pooled.push((s.n_terms as f64, s.modulus / (k as f64).abs().sqrt()));
        }
        let pts: Vec<(f64, f64)> = row.iter().map(|s| (s.n_terms as f64, s.modulus)).collect();
        slopes.push(json!({ "k": k, "slope": log_slope(&pts).map_or(Value::Null, jnum) }));
    }
    let ratio_median = median(&all_ratios);
    let ratio_max = all_ratios.iter().copied().fold(0.0, f64::max);
    let max_slope = slopes.iter().filter_map(|s| s["slope"].as_f64()).fold(f64::NEG_INFINITY, f64::max);
    report.set("power_exponent", jnum((1.0 + gamma.to_f64()) / 2.0));
    report.set("power_slopes", Value::Array(slopes));
    report.set("power_max_slope", jnum(max_slope));
    report.set("power_pooled_slope", log_slope(&pooled).map_or(Value::Null, jnum));
    report.set("power_ratio_median", jnum(ratio_median));
    report.set("power_ratio_max", jnum(ratio_max));

    let quad = quad_sum_grid(alpha, 1, 1, 0, &quad_grid, eps);
    for s in &quad {
        report.push(vec![
            "quadratic".into(),
            "1".into(),
            s.n_terms.to_string(),
            num(s.modulus),
            num(s.bound),
            num(s.ratio),
        ]);
    }
    let pts: Vec<(f64, f64)> = quad.iter().map(|s| (s.n_terms as f64, s.modulus)).collect();
    report.set("quadratic_slope", log_slope(&pts).map_or(Value::Null, jnum));
    let vdc_n = 1000.min(cfg.max_n());
    let direct = quad_sum_grid(alpha, 1, 1, 0, &[vdc_n], eps)[0].value.norm_sqr();
    let expanded = vdc_expanded(alpha, 1, 1, 0, vdc_n);
    let differenced = vdc_differenced(alpha, 1, 1, 0, vdc_n);
    let vdc_err = ((expanded - direct).norm() / direct).max((differenced - direct).norm() / direct);
    report.set("vdc_n", json!(vdc_n));
    report.set("vdc_relative_error", jnum(vdc_err));

    let poly = five_frequency_poly();
    let fourier_grid = quad_grid.clone();
    let deficits = periodic_deficit_power_grid(&poly, c, gamma, &fourier_grid);
    for (&n, &(d, b)) in fourier_grid.iter().zip(&deficits) {
        report.push(vec!["fourier".into(), "".into(), n.to_string(), num(d), num(b), num(d / b)]);
    }
    let (c_first, c_full) = fitted_constants(&deficits);
    report.set("fourier_constant_first_half", jnum(c_first));
    report.set("fourier_constant_full", jnum(c_full));
    report.set("fourier_constant_stable", json!(c_full <= 2.0 * c_first));
    Ok(report)
}

pub fn sieve_grid(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let eps = cfg.real_or(&cfg.eps, "0.1")?.f64()?;
    let sieve_eps = 1e-6;
    if !(eps > 0.0) {
        return Err(CliError::Precondition("eps must be positive".into()));
    }
    let z_max = 1e6;
    let mut report = Report::new(Experiment::SieveGrid, &["table", "a", "b", "c", "value", "holds"]);
    let u1 = empirical_u1(eps, 100, z_max);
    report.set("mertens_eps", jnum(eps));
    report.set("mertens_u1", u1.map_or(Value::Null, |u| json!(u)));
    let mut all_hold = u1.is_some();
    if let Some(u1) = u1 {
        for u in u1..=100 {
            let mut z = 10.0 * u as f64;
            while z <= z_max {
                let holds = mertens_check(u as f64, z, eps);
                all_hold &= holds;
                report.push(vec![
                    "mertens".into(),
                    u.to_string(),
                    num(z),
                    "".into(),
                    num(mertens_ratio(u as f64, z)),
                    holds.to_string(),
                ]);
                z *= 10.0;
            }
        }
    }
    report.set("mertens_all_hold", json!(all_hold));

    let ns = cfg.grid.clone().unwrap_or_else(|| vec![10_000, 100_000, 1_000_000]);
    if ns.iter().any(|&n| n > cfg.max_n()) {
        return Err(CliError::Precondition("sieve length above max_n".into()));
    }
    let mut sandwiched = true;
    for &n in &ns {
        for z_exp in [0.125, 0.25] {
            let z = (n as f64).powf(z_exp).max(2.0);
            for s in [1.5, 2.0, 3.0, 4.0] {
                let p = SieveProblem::new(Weights::Uniform(n), z, z.powf(s), sieve_eps)?;
                let rep = jr_bounds(&p)?;
                sandwiched &= rep.sandwiched;
                let exact = rough_count(z, n) as f64 == rep.sifted;
                report.push(vec![
                    "jr".into(),
                    n.to_string(),
                    num(z),
                    num(s),
                    num(rep.sifted),
                    (rep.sandwiched && exact).to_string(),
                ]);
                sandwiched &= exact;
            }
        }
    }
    report.set("sandwiched", json!(sandwiched));
    Ok(report)
}

fn dioph_inputs(cfg: &ExperimentConfig) -> Vec<PointSpec> {
    let mut pts: Vec<PointSpec> = Vec::new();
    if cfg.point != PointSpec::default() {
        pts.push(cfg.point.clone());
    }
    pts.extend(cfg.points.iter().cloned());
    if pts.is_empty() {
        for x in ["sqrt(2)", "golden", "3.14159265358979"] {
            pts.push(PointSpec { x: Some(Real::new(x)), ..Default::default() });
        }
    }
    pts
}

pub fn dioph(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let depth = cfg.cf_depth.unwrap_or(30);
    let n = cfg.n.unwrap_or(10_000).min(cfg.max_n());
    let mut report = Report::new(Experiment::Dioph, &["x", "quantity", "index", "value"]);
    let mut summaries = Vec::new();
    for spec in dioph_inputs(cfg) {
        let (label, x, cf) = match (&spec.x, &spec.construct) {
            (Some(x), None) => {
                let r = x.exact()?;
                let cf = cf_expand(&r, depth)?;
                (x.0.clone(), Some(r), cf)
            }
            (None, Some(c)) => {
                let nd = diophantine::construct_non_dioph(&c.prefix, c.mu, c.extra);
                (format!("construct{:?}^{}", c.prefix, c.mu), None, nd.cf)
            }
            _ => return Err(CliError::Precondition("dioph points need exactly one of x or construct".into())),
        };
        for (k, d) in cf.digits.iter().enumerate() {
            report.push(vec![label.clone(), "digit".into(), (k + 1).to_string(), d.to_string()]);
        }
        for (k, c) in convergents(&cf).iter().enumerate() {
            report.push(vec![label.clone(), "ln_q".into(), k.to_string(), num(ln_big(&c.q))]);
        }
        let x_dd = cf.to_dd();
        let lattice = reduce_dd(&horocycle_base(x_dd))?;
        let profile = lattice_dioph_type(&lattice, 6.0, 24)?;
        for (t, eta) in &profile.samples {
            report.push(vec![label.clone(), "eta".into(), num(*t), num(*eta)]);
        }
        let mut summary = json!({
            "x": label,
            "kappa_hat": jnum(profile.kappa_hat),
            "kappa_tail": jnum(profile.kappa_tail),
        });
        if let Some(r) = &x {
            summary["mu_hat"] = dioph_type_estimate(r, depth).ok().map_or(Value::Null, jnum);
            summary["badly_approximable_10"] = json!(is_badly_approximable(r, depth, 10)?);
            let mut last = None;
            let mut m = 1000.min(n);
            while m <= n {
                let l = lambda_partial(r.to_f64(), 2.0, m)?;
                report.push(vec![label.clone(), "lambda2".into(), m.to_string(), num(l)]);
                last = Some(l);
                m *= 2;
            }
            summary["lambda2"] = last.map_or(Value::Null, jnum);
        }
        summaries.push(summary);
    }
    report.set("points", Value::Array(summaries));
    Ok(report)
}

pub fn period(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let fns = match &cfg.test_functions {
        None => vec![periodic_orbits::TestFn::YAbove(2.0)],
        Some(_) => test_fns(cfg)?,
    };
    let pairs = cfg.pairs.clone().unwrap_or_else(|| vec![(1, 50), (1, 100), (7, 50), (13, 100)]);
    let mut report = Report::new(
        Experiment::Period,
        &["p", "q", "test_fn", "period_integral", "haar", "deficit", "nodes", "change"],
    );
    let tol = cfg.real_or(&cfg.eps, "0.00001")?.f64()?;
    if !(tol > 0.0) {
        return Err(CliError::Precondition("quadrature tolerance must be positive".into()));
    }
    let mut max_deficit = 0.0f64;
    for &(p, q) in &pairs {
        let pt = make_periodic_point(p, q)?;
        for f in &fns {
            let est = period_integral(f, &pt, 0, tol)?;
            let haar = match f.haar_exact() {
                Some(h) => h,
                None => haar_integral(f, 64, 1e-9)?.value,
            };
            let deficit = (est.value - haar).abs();
            max_deficit = max_deficit.max(deficit);
            report.push(vec![
                p.to_string(),
                q.to_string(),
                f.to_string(),
                num(est.value),
                num(haar),
                num(deficit),
                est.nodes.to_string(),
                num(est.change),
            ]);
        }
    }
    report.set("max_deficit", jnum(max_deficit));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_a_power_law() {
        let pts: Vec<(f64, f64)> = (1..10).map(|n| (n as f64, 3.0 * (n as f64).powf(0.7))).collect();
        assert!((log_slope(&pts).unwrap() - 0.7).abs() < 1e-12);
        assert_eq!(median(&[3.0, 1.0, 2.0, 10.0]), 2.5);
    }

    #[test]
    fn quarter_decade_grid() {
        let g = quarter_decades(3, 4);
        assert_eq!(g, vec![1000, 1778, 3162, 5623, 10000]);
    }

    #[test]
    fn poly_mean_and_peak() {
        let f = five_frequency_poly();
        assert!((f.mean() - 1.0).abs() < 1e-15);
        assert!((f.eval(0.0) - 2.9375).abs() < 1e-12);
    }

    #[test]
    fn small_period_run() {
        let cfg = ExperimentConfig { pairs: Some(vec![(1, 5)]), ..Default::default() };
        let r = period(&cfg).unwrap();
        assert_eq!(r.rows.len(), 1);
        assert!(period(&ExperimentConfig { pairs: Some(vec![(2, 4)]), ..Default::default() }).is_err());
    }

    #[test]
    fn dioph_defaults() {
        let r = dioph(&ExperimentConfig { n: Some(2000), ..Default::default() }).unwrap();
        let pts = r.results["points"].as_array().unwrap();
        assert_eq!(pts.len(), 3);
        assert_eq!(pts[0]["badly_approximable_10"], json!(true));
        assert_eq!(pts[2]["badly_approximable_10"], json!(false));
    }
}
