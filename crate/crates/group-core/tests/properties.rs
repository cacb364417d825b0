use group_core::{bruhat_decompose, reduce_psl2z, Dd, DdMat, GroupElement, HalfPlanePoint};
use proptest::prelude::*;

fn element() -> impl Strategy<Value = GroupElement> {
    (-10.0..10.0f64, -10.0..10.0f64, -10.0..10.0f64, -10.0..10.0f64).prop_filter_map(
        "positive determinant",
        |(a, b, c, d)| {
            if a * d - b * c > 0.05 {
                GroupElement::new(a, b, c, d)
            } else {
                None
            }
        },
    )
}

fn scale(g: &GroupElement) -> f64 {
    g.a.abs().max(g.b.abs()).max(g.c.abs()).max(g.d.abs())
}

fn word() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, 1..6)
}

/// Integer matrix from alternating translations and inversions.
fn modular(w: &[i64]) -> [[f64; 2]; 2] {
    let mut m = [[1.0, 0.0], [0.0, 1.0]];
    for &n in w {
        let t = [[1.0, n as f64], [0.0, 1.0]];
        let s = [[0.0, -1.0], [1.0, 0.0]];
        for g in [t, s] {
            m = [
                [g[0][0] * m[0][0] + g[0][1] * m[1][0], g[0][0] * m[0][1] + g[0][1] * m[1][1]],
                [g[1][0] * m[0][0] + g[1][1] * m[1][0], g[1][0] * m[0][1] + g[1][1] * m[1][1]],
            ];
        }
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn group_laws(g in element(), h in element(), k in element()) {
        let left = g.compose(&h).compose(&k);
        let right = g.compose(&h.compose(&k));
        let tol = 1e-12 * scale(&g) * scale(&h) * scale(&k);
        prop_assert!(left.distance_projective(&right) <= tol);
        prop_assert!(g.compose(&GroupElement::IDENTITY).distance_projective(&g) <= 1e-12 * scale(&g));
        let e = g.invert().compose(&g);
        prop_assert!(e.distance_projective(&GroupElement::IDENTITY) <= 1e-12 * scale(&g).powi(2));
        // Rounding the stored entries alone perturbs ad - bc by about ulp(ad).
        prop_assert!((left.det() - 1.0).abs() <= 1e-12f64.max(4e-16 * scale(&left).powi(2)));
    }

    #[test]
    fn bruhat_roundtrip(g in element()) {
        let f = bruhat_decompose(&g);
        prop_assert!(f.recompose().distance_projective(&g) <= 1e-10 * scale(&g).max(1.0).powi(2));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn one_parameter_identities(s in -50.0..50.0f64, t in -50.0..50.0f64, tau in -3.0..3.0f64) {
        let uu = GroupElement::u0(s).compose(&GroupElement::u0(t));
        prop_assert!(uu.distance_projective(&GroupElement::u0(s + t)) <= 1e-12 * (1.0 + (s + t).abs()));
        let aa = GroupElement::a_t(tau).compose(&GroupElement::a_t(t / 20.0));
        prop_assert!(aa.distance_projective(&GroupElement::a_t(tau + t / 20.0)) <= 1e-12 * aa.a.max(aa.d));
        let conj = GroupElement::a_t(tau).compose(&GroupElement::u0(s)).compose(&GroupElement::a_t(-tau));
        prop_assert!(conj.distance_projective(&GroupElement::u0((-tau).exp() * s)) <= 1e-12 * (1.0 + s.abs() * (-tau).exp()));
    }

    #[test]
    fn mobius_is_isometry(g in element(), x1 in -3.0..3.0f64, y1 in 0.1..5.0f64, x2 in -3.0..3.0f64, y2 in 0.1..5.0f64) {
        let z1 = HalfPlanePoint::new(x1, y1).unwrap();
        let z2 = HalfPlanePoint::new(x2, y2).unwrap();
        let d0 = z1.distance(&z2);
        let d1 = g.mobius_act(z1).distance(&g.mobius_act(z2));
        prop_assert!((d0 - d1).abs() <= 1e-10 * scale(&g).powi(2).max(1.0));
        prop_assert!(g.mobius_act(z1).y > 0.0);
    }

    #[test]
    fn mobius_equivariance(g in element(), h in element(), x in -2.0..2.0f64, y in 0.2..3.0f64) {
        let z = HalfPlanePoint::new(x, y).unwrap();
        let a = g.compose(&h).mobius_act(z);
        let b = g.mobius_act(h.mobius_act(z));
        let tol = 1e-10 * (scale(&g) * scale(&h)).powi(2);
        prop_assert!((a.x - b.x).abs() <= tol * (1.0 + a.x.abs()) && (a.y - b.y).abs() <= tol * (1.0 + a.y));
    }

    #[test]
    fn reduction_ignores_lattice_translate(g in element(), w in word()) {
        let m = modular(&w);
        let dg = DdMat::from(&g);
        let gm = DdMat::new(Dd::new(m[0][0]), Dd::new(m[0][1]), Dd::new(m[1][0]), Dd::new(m[1][1])).mul(&dg);
        let p = reduce_psl2z(&g).unwrap();
        let q = group_core::reduce_dd(&gm).unwrap();
        let (z, w) = (p.base_point(), q.base_point());
        prop_assert!(z.in_fundamental_domain(1e-9));
        // Boundary points are identified by x -> -x.
        let same = (z.x - w.x).abs() < 1e-9 || ((z.x + w.x).abs() < 1e-9 && (z.x.abs() > 0.5 - 1e-9 || (z.x * z.x + z.y * z.y - 1.0).abs() < 1e-9));
        prop_assert!(same && (z.y - w.y).abs() < 1e-9, "{:?} vs {:?}", z, w);
        let again = reduce_psl2z(&p.reduced).unwrap();
        prop_assert!(again.word.is_empty());
    }
}
