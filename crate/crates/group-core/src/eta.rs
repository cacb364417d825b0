//! Injectivity radius on the modular surface.
//!
//! For `Gamma h` the stabilizer under right multiplication is `h^{-1} Gamma h`,
//! and `eta = min ||h^{-1} gamma h - I||_F` over nontrivial `gamma`. Conjugation
//! by a rotation preserves the Frobenius norm, so `h` may be replaced by the
//! upper-triangular element carrying `i` to the reduced base point `x + iy`.

use crate::element::HalfPlanePoint;
use crate::reduce::LatticePoint;
use crate::GroupError;

pub const MAX_ENTRY_BOUND: i64 = 10_000;

/// Minimizer together with the attained norm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EtaWitness {
    pub eta: f64,
    pub gamma: [i64; 4],
}

pub fn injectivity_eta(p: &LatticePoint) -> Result<f64, GroupError> {
    Ok(eta_witness(p)?.eta)
}

pub fn eta_witness(p: &LatticePoint) -> Result<EtaWitness, GroupError> {
    let z = p.base_point();
    let bound = (10.0 * p.dist().exp()).ceil();
    if bound > MAX_ENTRY_BOUND as f64 {
        return Err(GroupError::EnumerationOverflow { bound });
    }
    Ok(eta_at(z, bound as i64))
}

/// `||h^{-1} gamma h - I||_F` for `h = (sqrt y, x/sqrt y; 0, 1/sqrt y)`.
pub fn conjugate_norm(z: HalfPlanePoint, g: [i64; 4]) -> f64 {
    let (x, y) = (z.x, z.y);
    let [a, b, c, d] = g.map(|v| v as f64);
    let x11 = a - x * c - 1.0;
    let x12 = (b + x * (a - d) - c * x * x) / y;
    let x21 = c * y;
    let x22 = c * x + d - 1.0;
    (x11 * x11 + x12 * x12 + x21 * x21 + x22 * x22).sqrt()
}

/// Pruned enumeration over integer matrices with entries bounded by `bound`.
fn eta_at(z: HalfPlanePoint, bound: i64) -> EtaWitness {
    let (x, y) = (z.x, z.y);
    let start = [1, 1, 0, 1];
    let mut best = EtaWitness { eta: conjugate_norm(z, start), gamma: start };
    let cmax = ((best.eta / y).floor() as i64).min(bound);
    for c in -cmax..=cmax {
        if (c as f64).abs() * y > best.eta {
            continue;
        }
        // |c x + d - 1| <= best and |a - x c - 1| <= best.
        let d_lo = ((1.0 - c as f64 * x - best.eta).ceil() as i64).max(-bound);
        let d_hi = ((1.0 - c as f64 * x + best.eta).floor() as i64).min(bound);
        for d in d_lo..=d_hi {
            let a_lo = ((1.0 + x * c as f64 - best.eta).ceil() as i64).max(-bound);
            let a_hi = ((1.0 + x * c as f64 + best.eta).floor() as i64).min(bound);
            for a in a_lo..=a_hi {
                if c != 0 {
                    let num = a * d - 1;
                    if num % c != 0 {
                        continue;
                    }
                    let b = num / c;
                    if b.abs() > bound {
                        continue;
                    }
                    consider(z, [a, b, c, d], &mut best);
                } else {
                    if a * d != 1 {
                        continue;
                    }
                    // |b + x(a - d)| <= best * y
                    let centre = -x * (a - d) as f64;
                    let b_lo = ((centre - best.eta * y).ceil() as i64).max(-bound);
                    let b_hi = ((centre + best.eta * y).floor() as i64).min(bound);
                    for b in b_lo..=b_hi {
                        if a == 1 && d == 1 && b == 0 {
                            continue;
                        }
                        consider(z, [a, b, c, d], &mut best);
                    }
                }
            }
        }
    }
    best
}

fn consider(z: HalfPlanePoint, g: [i64; 4], best: &mut EtaWitness) {
    let n = conjugate_norm(z, g);
    if n < best.eta {
        *best = EtaWitness { eta: n, gamma: g };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::GroupElement;
    use crate::flow::geodesic;
    use crate::reduce::reduce_psl2z;

    /// Every determinant-one matrix with entries in [-10, 10], identity excluded.
    fn brute_force(z: HalfPlanePoint) -> f64 {
        let mut best = f64::INFINITY;
        for a in -10i64..=10 {
            for b in -10i64..=10 {
                for c in -10i64..=10 {
                    for d in -10i64..=10 {
                        if a * d - b * c != 1 || (b == 0 && c == 0 && a == d) {
                            continue;
                        }
                        best = best.min(conjugate_norm(z, [a, b, c, d]));
                    }
                }
            }
        }
        best
    }

    #[test]
    fn identity_coset_is_one() {
        let p = LatticePoint::identity();
        let w = eta_witness(&p).unwrap();
        assert!((w.eta - 1.0).abs() < 1e-15);
        assert!((brute_force(p.base_point()) - w.eta).abs() < 1e-15);
        assert!(w.gamma == [1, 1, 0, 1] || w.gamma == [1, -1, 0, 1]);
    }

    #[test]
    fn pushed_into_cusp() {
        let p = geodesic(&LatticePoint::identity(), 2.0).unwrap();
        let eta = injectivity_eta(&p).unwrap();
        assert!((eta - (-2f64).exp()).abs() < 1e-14);
        assert!((brute_force(p.base_point()) - eta).abs() < 1e-14);
    }

    #[test]
    fn agrees_with_brute_force_on_scattered_points() {
        for &(x, y) in &[(0.3, 0.96), (-0.5, 0.87), (0.1, 1.7), (0.45, 1.2), (0.0, 1.0), (-0.2, 3.3)] {
            let s = f64::sqrt(y);
            let p = reduce_psl2z(&GroupElement::normalized(s, x / s, 0.0, 1.0 / s)).unwrap();
            let fast = injectivity_eta(&p).unwrap();
            let slow = brute_force(p.base_point());
            assert!((fast - slow).abs() < 1e-14, "{x},{y}: {fast} vs {slow}");
        }
    }

    #[test]
    fn overflow_deep_in_cusp() {
        let p = geodesic(&LatticePoint::identity(), 8.0).unwrap();
        assert!(matches!(injectivity_eta(&p), Err(GroupError::EnumerationOverflow { .. })));
    }
}
