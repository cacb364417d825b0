use crate::functions::{sieve_f_lower, sieve_f_upper};
use crate::problem::SieveProblem;
use crate::table::v_of_z;
use crate::SieveError;

/// The sifted sum next to its linear-sieve bounds.
#[derive(Clone, Debug, PartialEq)]
pub struct SieveReport {
    /// `S(A, P, z)` computed exactly.
    pub sifted: f64,
    /// `X = V(z) |A|`.
    pub x: f64,
    pub v: f64,
    pub r: f64,
    pub s: f64,
    pub f_upper: f64,
    pub f_lower: f64,
    /// Absent when `D < z^2`.
    pub lower: Option<f64>,
    pub upper: f64,
    pub sandwiched: bool,
}

/// `(f(s) - eps e^{14-s}) X - R < S < (F(s) + eps e^{14-s}) X + R`.
pub fn jr_bounds(problem: &SieveProblem) -> Result<SieveReport, SieveError> {
    let s = problem.s();
    let f_upper = sieve_f_upper(s)?;
    let f_lower = sieve_f_lower(s)?;
    let v = v_of_z(problem.z);
    let x = v * problem.total();
    let r = problem.r_total()?;
    let slack = problem.eps * (14.0 - s).exp();
    let upper = (f_upper + slack) * x + r;
    let lower = (problem.level >= problem.z * problem.z).then_some((f_lower - slack) * x - r);
    let sifted = problem.legendre_s();
    let sandwiched = sifted <= upper && lower.is_none_or(|l| l <= sifted);
    Ok(SieveReport { sifted, x, v, r, s, f_upper, f_lower, lower, upper, sandwiched })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Weights;

    #[test]
    fn level_four_at_a_million() {
        let z = 10f64.powf(0.75);
        let p = SieveProblem::new(Weights::Uniform(1_000_000), z, z.powi(4), 1e-6).unwrap();
        let rep = jr_bounds(&p).unwrap();
        assert!((rep.s - 4.0).abs() < 1e-12);
        let lower = rep.lower.unwrap();
        assert!(lower > 0.0 && lower <= rep.sifted && rep.sifted <= rep.upper, "{rep:?}");
        assert!(rep.sandwiched);
    }

    #[test]
    fn no_lower_bound_below_level_two() {
        let p = SieveProblem::new(Weights::Uniform(10_000), 10.0, 50.0, 1e-6).unwrap();
        let rep = jr_bounds(&p).unwrap();
        assert!(rep.lower.is_none());
        assert!(rep.sandwiched);
    }

    #[test]
    fn level_out_of_range() {
        let p = SieveProblem::new(Weights::Uniform(10_000), 3.0, 3f64.powi(6), 1e-6).unwrap();
        assert!(matches!(jr_bounds(&p), Err(SieveError::RangeUnsupported { .. })));
    }
}
