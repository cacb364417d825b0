use group_core::Dd;

use crate::DiophError;

/// `<x>`, the distance from `x` to the nearest integer.
pub fn dist_to_z(x: f64) -> f64 {
    (x - x.round()).abs()
}

/// `sum_{n <= N} 1 / (<n alpha> n^s)` with compensated accumulation.
pub fn lambda_partial(alpha: f64, s: f64, n: u64) -> Result<f64, DiophError> {
    if !(s > 1.0) {
        return Err(DiophError::InvalidInput(format!("lambda needs s > 1, got {s}")));
    }
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for k in 1..=n {
        let f = Dd::mul_f64_exact(alpha, k as f64).frac().to_f64();
        let d = f.min(1.0 - f);
        if d < 1e-15 {
            return Err(DiophError::DivisionNearZero { n: k });
        }
        let term = 1.0 / (d * (k as f64).powf(s));
        let t = sum + term;
        comp += if sum.abs() >= term.abs() { (sum - t) + term } else { (term - t) + sum };
        sum = t;
    }
    Ok(sum + comp)
}
