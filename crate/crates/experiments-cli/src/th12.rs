//! Orbit weights `a(n) = f(u0(c n) p)` sifted by the small primes.

use diophantine::ln_big;
use linear_sieve::{jr_bounds, SieveProblem, Weights};
use periodic_orbits::{approx_periodic_sequence, SUM_BLOCK};
use rayon::prelude::*;
use serde_json::{json, Value};
use sparse_sequences::{omega_table, rough_count, rough_numbers};

use crate::config::{ConstructSpec, Experiment, ExperimentConfig, PointSpec, Real};
use crate::orbit::{resolve_point, Orbit, Times};
use crate::report::{jnum, num, opt, Report};
use crate::th11::kappa_of;
use crate::{parse_test_fn, CliError};

/// The default pair: a badly approximable point and a constructed Liouville-type point.
pub fn default_points() -> Vec<PointSpec> {
    vec![
        PointSpec { x: Some(Real::new("surd(-1,2,1)")), ..Default::default() },
        PointSpec { construct: Some(ConstructSpec::pell_100()), ..Default::default() },
    ]
}

/// `f(u0(t_n) p)` for `n = 1..=n_max`.
pub fn orbit_weights(orbit: &Orbit, f: &periodic_orbits::TestFn, n_max: u64) -> Result<Vec<f64>, CliError> {
    let starts: Vec<u64> = (1..=n_max).step_by(SUM_BLOCK as usize).collect();
    let blocks: Result<Vec<Vec<f64>>, group_core::GroupError> = starts
        .par_iter()
        .map(|&s| (s..(s + SUM_BLOCK).min(n_max + 1)).map(|n| Ok(f.eval(&orbit.point(n)?))).collect())
        .collect();
    Ok(blocks?.concat())
}

pub fn run_th12(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let n = cfg.n.unwrap_or(100_000);
    if n > cfg.max_n() {
        return Err(CliError::Precondition(format!("n = {n} exceeds max_n")));
    }
    let z_exp = cfg.real_or(&cfg.z_exponent, "0.125")?.f64()?;
    let z = (n as f64).powf(z_exp);
    if !(z >= 2.0) {
        return Err(CliError::Precondition(format!("z = N^{z_exp} = {z} is below 2")));
    }
    let level = cfg.real_or(&cfg.level, "4")?.f64()?;
    let d_level = z.powf(level);
    let eps = cfg.real_or(&cfg.eps, "1e-6")?.f64()?;
    let c = cfg.real_or(&cfg.c, "1")?.dd()?;
    let kappa = kappa_of(cfg, "0.9999")?;
    let fns = match &cfg.test_functions {
        Some(v) => v.iter().map(|s| parse_test_fn(s)).collect::<Result<Vec<_>, _>>()?,
        None => vec![parse_test_fn("bump0")?],
    };
    let points = if cfg.points.is_empty() {
        if cfg.point == PointSpec::default() {
            default_points()
        } else {
            vec![cfg.point.clone()]
        }
    } else {
        cfg.points.clone()
    };
    let mut report = Report::new(Experiment::Th12, &["point", "test_fn", "quantity", "value"]);

    // Sifted integers have every prime factor >= z, hence at most 1/z_exp of them.
    let l = (1.0 / z_exp).floor() as u32 + 1;
    let omega = omega_table(n);
    let max_omega = rough_numbers(z, n).iter().map(|&m| omega[m as usize] as u32).max().unwrap_or(0);
    let uniform = SieveProblem::new(Weights::Uniform(n), z, d_level, eps)?.legendre_s();
    let rough = rough_count(z, n);
    report.set("L", json!(l));
    report.set("max_omega_of_rough", json!(max_omega));
    report.set("omega_within_L", json!(max_omega <= l));
    report.set("uniform_sifted", jnum(uniform));
    report.set("rough_count", json!(rough));
    report.set("uniform_matches_rough", json!(uniform == rough as f64));
    report.set("z", jnum(z));
    report.set("D", jnum(d_level));
    report.note("weights are evaluated at the orbit point itself, so the sifted sum needs no approximation correction");

    let mut per_point = Vec::new();
    for spec in &points {
        let point = resolve_point(spec, &ConstructSpec::pell_100(), cfg.cf_depth.unwrap_or(40))?;
        let orbit = point.orbit(Times::Linear { c });
        let correction_level =
            point.cf.as_ref().and_then(|cf| approx_periodic_sequence(cf, &kappa).ok()).map(|v| v[0].clone());
        for f in &fns {
            let a = orbit_weights(&orbit, f, n)?;
            let problem = SieveProblem::new(Weights::Real(a), z, d_level, eps)?;
            let rep = jr_bounds(&problem)?;
            let avg = problem.total() / n as f64;
            // ln of 2 N^3 d(q')^{-1/(1-kappa)} ||f||
            let ln_correction = correction_level.as_ref().map(|lv| {
                let expo = 1.0 / (1.0 - num_traits::ToPrimitive::to_f64(&kappa).unwrap_or(0.0));
                2f64.ln() + 3.0 * (n as f64).ln() - expo * 2.0 * ln_big(&lv.point.q) + f.c1_norm().ln()
            });
            let rows: Vec<(&str, String)> = vec![
                ("sifted_sum", num(rep.sifted)),
                ("total", num(problem.total())),
                ("average", num(avg)),
                ("haar", opt(f.haar_exact())),
                ("X", num(rep.x)),
                ("V", num(rep.v)),
                ("R", num(rep.r)),
                ("s", num(rep.s)),
                ("F", num(rep.f_upper)),
                ("f", num(rep.f_lower)),
                ("lower", opt(rep.lower)),
                ("upper", num(rep.upper)),
                ("sandwiched", rep.sandwiched.to_string()),
                ("ln_correction", opt(ln_correction)),
                ("positive", (rep.sifted > 0.0).to_string()),
            ];
            for (q, v) in rows {
                report.push(vec![point.label.clone(), f.to_string(), q.to_string(), v]);
            }
            per_point.push(json!({
                "point": point.label,
                "test_fn": f.to_string(),
                "sifted_sum": jnum(rep.sifted),
                "lower": rep.lower.map_or(Value::Null, jnum),
                "upper": jnum(rep.upper),
                "positive": rep.sifted > 0.0,
                "sandwiched": rep.sandwiched,
            }));
        }
    }
    report.set("runs", Value::Array(per_point));
    Ok(report)
}
