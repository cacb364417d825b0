//! Geodesic flow and cusp excursions.

use crate::element::HalfPlanePoint;
use crate::reduce::{reduce_dd, LatticePoint};
use crate::GroupError;

/// `g_t(Gamma h) = Gamma h a_{-t}`.
pub fn geodesic(p: &LatticePoint, t: f64) -> Result<LatticePoint, GroupError> {
    reduce_dd(&p.representative().mul_a_neg(t))
}

/// `dist(g_t p)`: hyperbolic distance from `i` to the reduced base point of `g_t p`.
pub fn cusp_excursion(p: &LatticePoint, t: f64) -> Result<f64, GroupError> {
    Ok(HalfPlanePoint::I.distance(&geodesic(p, t)?.base_point()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::GroupElement;
    use crate::reduce::reduce_psl2z;

    #[test]
    fn identity_coset() {
        let p = LatticePoint::identity();
        assert!((cusp_excursion(&p, 3.0).unwrap() - 3.0).abs() < 1e-12);
        assert!(cusp_excursion(&p, 0.0).unwrap().abs() < 1e-15);
    }

    #[test]
    fn rational_point_rises_then_saturates() {
        // Gamma (1 0; 1/2 1)^{-1}: the G/Gamma point (1 0; 1/2 1)Gamma.
        let p = reduce_psl2z(&GroupElement::u_minus(-0.5)).unwrap();
        let prof: Vec<f64> = (1..=10).map(|t| cusp_excursion(&p, t as f64).unwrap()).collect();
        for w in prof.windows(2).skip(2) {
            assert!(w[1] > w[0]);
            assert!((w[1] - w[0] - 1.0).abs() < 0.05);
        }
    }
}
