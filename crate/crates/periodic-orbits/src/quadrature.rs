use group_core::{reduced_image, Dd, DdMat, GroupError};
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::periodic::PeriodicPoint;
use crate::testfn::TestFn;
use crate::OrbitError;

/// Terms per block in [`ordered_sum`].
pub const SUM_BLOCK: u64 = 1 << 14;

const MAX_PERIOD_NODES: u64 = 1 << 27;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureEstimate {
    pub value: f64,
    /// Difference from the estimate at half the resolution.
    pub change: f64,
    pub nodes: u64,
}

fn tree(v: &[Dd]) -> Dd {
    match v.len() {
        0 => Dd::ZERO,
        1 => v[0],
        n => tree(&v[..n / 2]) + tree(&v[n / 2..]),
    }
}

/// `sum_{n in [lo, hi)} f(n)` in double-double, with fixed blocks and a fixed
/// reduction tree so that the result does not depend on the thread count.
pub fn ordered_sum<E, F>(lo: u64, hi: u64, f: F) -> Result<Dd, E>
where
    E: Send,
    F: Fn(u64) -> Result<f64, E> + Sync,
{
    let starts: Vec<u64> = (lo..hi).step_by(SUM_BLOCK as usize).collect();
    let partial: Result<Vec<Dd>, E> = starts
        .par_iter()
        .map(|&s| {
            let mut acc = Dd::ZERO;
            for n in s..(s + SUM_BLOCK).min(hi) {
                acc = acc.add_f64(f(n)?);
            }
            Ok(acc)
        })
        .collect();
    Ok(tree(&partial?))
}

/// The coset `Gamma g^{-1}` standing for `g Gamma` with `g = (1 0; x 1)`.
pub fn horocycle_base(x: Dd) -> DdMat {
    DdMat::new(Dd::ONE, Dd::ZERO, -x, Dd::ONE)
}

/// `h u0(-t)`: the representative of `u0(t) g Gamma` when `h` represents `g Gamma`.
#[inline]
pub fn along_horocycle(h: &DdMat, t: Dd) -> DdMat {
    DdMat::new(h.a, h.b - h.a * t, h.c, h.d - h.c * t)
}

fn period_at(f: &TestFn, h: &DdMat, right: &DdMat, period: f64, n: u64) -> Result<f64, GroupError> {
    let step = Dd::new(period) / Dd::new(2.0 * n as f64);
    let sum = ordered_sum(0, n, |j| {
        let t = step.mul_f64((2 * j + 1) as f64);
        Ok(f.eval(&reduced_image(&along_horocycle(h, t).mul(right))?))
    })?;
    Ok((sum / Dd::new(n as f64)).to_f64())
}

/// `(1/q^2) int_0^{q^2} f(u0(s) (1 0; p/q 1) Gamma) ds` by the composite midpoint rule,
/// starting from `max(samples, 64 q^2)` nodes and doubling until the value moves by less than `tol`.
pub fn period_integral(
    f: &TestFn,
    pt: &PeriodicPoint,
    samples: u64,
    tol: f64,
) -> Result<QuadratureEstimate, OrbitError> {
    period_integral_translated(f, pt, &DdMat::IDENTITY, samples, tol)
}

/// The same integral for the orbit of `L (1 0; p/q 1) Gamma`, where `right = L^{-1}`.
pub fn period_integral_translated(
    f: &TestFn,
    pt: &PeriodicPoint,
    right: &DdMat,
    samples: u64,
    tol: f64,
) -> Result<QuadratureEstimate, OrbitError> {
    let q =
        pt.q.to_u64()
            .filter(|&q| q < 1 << 20)
            .ok_or_else(|| OrbitError::InvalidInput(format!("period {} too long", pt.period)))?;
    let p = pt.p.to_i64().ok_or_else(|| OrbitError::InvalidInput("numerator too large".into()))?;
    let period = (q * q) as f64;
    let h = horocycle_base(Dd::new(p as f64) / Dd::new(q as f64));
    let mut n = samples.max(64 * q * q).next_power_of_two();
    let mut prev = period_at(f, &h, right, period, n)?;
    loop {
        n *= 2;
        let cur = period_at(f, &h, right, period, n)?;
        let change = (cur - prev).abs();
        if change < tol {
            return Ok(QuadratureEstimate { value: cur, change, nodes: n });
        }
        if n >= MAX_PERIOD_NODES {
            return Err(OrbitError::QuadratureUnderResolved { change, nodes: n });
        }
        prev = cur;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::make_periodic_point;
    use group_core::{reduce_dd, GroupElement};

    #[test]
    fn constant_function_integrates_to_one() {
        for (p, q) in [(0, 1), (1, 2), (3, 7), (10, 33)] {
            let e = period_integral(&TestFn::One, &make_periodic_point(p, q).unwrap(), 0, 1e-6).unwrap();
            assert_eq!(e.value, 1.0);
            assert_eq!(e.change, 0.0);
        }
    }

    #[test]
    fn orbit_closes_after_one_period() {
        let pt = make_periodic_point(3, 7).unwrap();
        let h = horocycle_base(Dd::new(3.0) / Dd::new(7.0));
        let a = reduce_dd(&along_horocycle(&h, Dd::new(0.3))).unwrap().base_point();
        let b = reduce_dd(&along_horocycle(&h, Dd::new(0.3 + 49.0))).unwrap().base_point();
        assert!(a.distance(&b) < 1e-12);
        assert_eq!(pt.period.to_u64(), Some(49));
    }

    #[test]
    fn representative_matches_group_inverse() {
        let (x, t) = (0.37, 2.5);
        let g = GroupElement::u0(t).compose(&GroupElement::u_minus(x));
        let m = along_horocycle(&horocycle_base(Dd::new(x)), Dd::new(t));
        let inv = g.invert();
        assert!(m.to_element().distance_projective(&inv) < 1e-14);
    }

    #[test]
    fn identity_coset_is_the_unit_horocycle() {
        // the identity coset's orbit is y = 1 for all time
        let e = period_integral(&TestFn::YBand { lo: 0.999, hi: 1.001 }, &make_periodic_point(0, 1).unwrap(), 0, 1e-6)
            .unwrap();
        assert_eq!(e.value, 1.0);
    }

    #[test]
    fn ordered_sum_is_exact_on_integers() {
        let s: Result<Dd, ()> = ordered_sum(0, 100_000, |n| Ok(n as f64));
        assert_eq!(s.unwrap().to_f64(), 4_999_950_000.0);
    }
}
