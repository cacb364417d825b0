use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::OrbitError;

/// The point `(1 0; p/q 1) Gamma`, whose horocycle orbit closes after time `q^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicPoint {
    pub p: BigInt,
    pub q: BigInt,
    pub period: BigInt,
}

pub fn make_periodic_point(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<PeriodicPoint, OrbitError> {
    let (p, q) = (p.into(), q.into());
    if !q.is_positive() || !p.gcd(&q).is_one() {
        return Err(OrbitError::NotReduced { p: p.to_string(), q: q.to_string() });
    }
    let period = &q * &q;
    let pt = PeriodicPoint { p, q, period };
    debug_assert!(pt.fixes(&pt.period));
    Ok(pt)
}

impl PeriodicPoint {
    /// Whether `u0(s)` fixes the coset, i.e. whether
    /// `(1 + sp/q, s; -p^2 s/q^2, 1 - ps/q)` has integer entries.
    pub fn fixes(&self, s: &BigInt) -> bool {
        let sp = s * &self.p;
        (&sp % &self.q).is_zero() && ((&sp * &self.p) % (&self.q * &self.q)).is_zero()
    }

    /// Least positive `s` fixing the coset, found by trying every `s` up to `q^2`.
    pub fn minimal_period_exhaustive(&self) -> Option<u64> {
        let limit = self.period.to_u64()?;
        let (p, q) = (self.p.to_i128()?, self.q.to_i128()?);
        (1..=limit).find(|&s| {
            let sp = s as i128 * p;
            sp % q == 0 && (sp * p) % (q * q) == 0
        })
    }

    pub fn x(&self) -> (f64, f64) {
        (self.p.to_f64().unwrap_or(f64::NAN), self.q.to_f64().unwrap_or(f64::NAN))
    }

    /// Period of the point translated by `a_t`, from `a_t u0(s) a_t^{-1} = u0(e^{-t} s)`.
    pub fn translated_period(&self, t: f64) -> f64 {
        (-t).exp() * self.period.to_f64().unwrap_or(f64::INFINITY)
    }

    pub fn is_identity_coset(&self) -> bool {
        self.q.is_one()
    }
}
