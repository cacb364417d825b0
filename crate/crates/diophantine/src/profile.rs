use group_core::{geodesic, injectivity_eta, LatticePoint};

use crate::DiophError;

/// Finite-horizon Diophantine profile.
#[derive(Clone, Debug, PartialEq)]
pub struct DiophProfile {
    /// Type estimate of a number, when one was computed.
    pub mu_hat: Option<f64>,
    /// Least-squares decay rate of `eta(a_t p)`, clamped to `[0, 1]`; a truncated estimate.
    pub kappa_hat: f64,
    /// Same fit on the second half of the grid.
    pub kappa_tail: f64,
    /// Fitted `ln C` in `eta >= C e^{-kappa t}`.
    pub intercept: f64,
    pub samples: Vec<(f64, f64)>,
}

pub fn lattice_dioph_type(p: &LatticePoint, t_max: f64, steps: usize) -> Result<DiophProfile, DiophError> {
    if !(t_max > 0.0) || steps < 2 {
        return Err(DiophError::InvalidInput("need t_max > 0 and at least two steps".into()));
    }
    let mut samples = Vec::with_capacity(steps + 1);
    for j in 0..=steps {
        let t = t_max * j as f64 / steps as f64;
        let eta = injectivity_eta(&geodesic(p, t)?)?;
        samples.push((t, eta));
    }
    let (slope, intercept) = fit(&samples);
    let (tail_slope, _) = fit(&samples[steps / 2..]);
    Ok(DiophProfile {
        mu_hat: None,
        kappa_hat: (-slope).clamp(0.0, 1.0),
        kappa_tail: (-tail_slope).clamp(0.0, 1.0),
        intercept,
        samples,
    })
}

fn fit(s: &[(f64, f64)]) -> (f64, f64) {
    let n = s.len() as f64;
    let mt = s.iter().map(|p| p.0).sum::<f64>() / n;
    let ml = s.iter().map(|p| p.1.ln()).sum::<f64>() / n;
    let sxy: f64 = s.iter().map(|p| (p.0 - mt) * (p.1.ln() - ml)).sum();
    let sxx: f64 = s.iter().map(|p| (p.0 - mt).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, ml - slope * mt)
}
