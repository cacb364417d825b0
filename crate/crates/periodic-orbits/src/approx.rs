use diophantine::{convergents, gap_log, ContinuedFraction};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive};

use crate::periodic::{make_periodic_point, PeriodicPoint};
use crate::OrbitError;

/// One convergent level accepted as an approximating periodic point.
#[derive(Clone, Debug, PartialEq)]
pub struct ApproxLevel {
    pub k: usize,
    pub point: PeriodicPoint,
    /// `|x - p_k/q_k|`; underflows to zero for very deep levels.
    pub gap: f64,
    pub ln_gap: f64,
    /// `ln(gap / d(q)^{-1/(1-kappa)})` with `d(q) = q^2`; nonpositive on every emitted level.
    pub ln_ratio: f64,
}

/// Convergents `p_k/q_k`, `q_k >= 2`, with `|x - p_k/q_k| <= (q_k^2)^{-1/(1-kappa)}`.
///
/// With `2/(1-kappa) = n/m` the test is `(1/gap)^m >= q^n`, decided exactly from
/// `q_k q_{k+1} <= 1/gap < q_k (q_{k+1} + q_k)`. Levels the bracket cannot
/// decide are skipped.
pub fn approx_periodic_sequence(cf: &ContinuedFraction, kappa: &BigRational) -> Result<Vec<ApproxLevel>, OrbitError> {
    if !kappa.is_positive() || kappa >= &BigRational::one() {
        return Err(OrbitError::InvalidInput(format!("kappa = {kappa} must lie in (0, 1)")));
    }
    let expo = BigRational::from_integer(2.into()) / (BigRational::one() - kappa);
    let n = expo.numer().to_u32().ok_or_else(|| OrbitError::InvalidInput("exponent too large".into()))?;
    let m = expo.denom().to_u32().ok_or_else(|| OrbitError::InvalidInput("exponent too large".into()))?;
    let expo_f = expo.to_f64().unwrap_or(f64::INFINITY);
    let conv = convergents(cf);
    let mut out = Vec::new();
    for k in 0..conv.len().saturating_sub(1) {
        let q = &conv[k].q;
        if q < &BigInt::from(2) {
            continue;
        }
        let lower: BigInt = q * &conv[k + 1].q;
        let ln_q = diophantine::ln_big(q);
        let (lhs, rhs) = (m as f64 * diophantine::ln_big(&lower), n as f64 * ln_q);
        let slack = 1e-9 * rhs.abs().max(1.0);
        let holds = if lhs < rhs - slack {
            false
        } else if lhs > rhs + slack {
            true
        } else {
            Pow::pow(&lower, m) >= Pow::pow(q, n)
        };
        if !holds {
            continue;
        }
        let ln_gap = gap_log(cf, &conv, k).expect("next digit known");
        out.push(ApproxLevel {
            k,
            point: make_periodic_point(conv[k].p.clone(), q.clone())?,
            gap: ln_gap.exp(),
            ln_gap,
            ln_ratio: ln_gap + expo_f * ln_q,
        });
    }
    if out.is_empty() {
        return Err(OrbitError::NoApproximantFound { depth: cf.depth() });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use diophantine::{cf_expand, construct_non_dioph_100, RealInput};

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn constructed_number_qualifies_at_kappa_098() {
        let x = construct_non_dioph_100();
        let seq = approx_periodic_sequence(&x.cf, &ratio(49, 50)).unwrap();
        let qs: Vec<BigInt> = seq.iter().map(|l| l.point.q.clone()).collect();
        assert_eq!(qs[0], BigInt::from(2));
        assert_eq!(qs[1], (BigInt::one() << 99) + 1);
        assert!(seq.iter().all(|l| l.ln_ratio <= 1e-9));
        assert!(seq.windows(2).all(|w| w[0].point.period < w[1].point.period));
    }

    #[test]
    fn kappa_099_demands_more_than_the_construction_gives() {
        let x = construct_non_dioph_100();
        assert!(matches!(approx_periodic_sequence(&x.cf, &ratio(99, 100)), Err(OrbitError::NoApproximantFound { .. })));
    }

    #[test]
    fn quadratic_irrational_has_no_approximants() {
        let cf = cf_expand(&RealInput::sqrt(2), 200).unwrap();
        let r = approx_periodic_sequence(&cf, &ratio(99, 100));
        assert!(matches!(r, Err(OrbitError::NoApproximantFound { depth: 200 })));
    }

    #[test]
    fn kappa_range_checked() {
        let cf = ContinuedFraction::new(0, &[2, 3]);
        assert!(approx_periodic_sequence(&cf, &ratio(1, 1)).is_err());
        assert!(approx_periodic_sequence(&cf, &ratio(0, 1)).is_err());
    }
}
