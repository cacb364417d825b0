use group_core::{Dd, GroupElement};
use num_bigint::BigInt;
use num_integer::Integer;
use periodic_orbits::*;
use proptest::prelude::*;

#[test]
fn minimal_period_is_q_squared_up_to_50() {
    for q in 1i64..=50 {
        for p in 0..q {
            if p.gcd(&q) != 1 {
                continue;
            }
            let pt = make_periodic_point(p, q).unwrap();
            assert_eq!(pt.minimal_period_exhaustive(), Some((q * q) as u64), "p/q = {p}/{q}");
            assert!(pt.fixes(&pt.period));
        }
    }
}

#[test]
fn budgets_decrease_along_the_quartic_schedule() {
    let x = diophantine::construct_non_dioph(&[0, 2], 100, 3);
    let levels = approx_periodic_sequence(&x.cf, &num_rational::BigRational::new(49.into(), 50.into())).unwrap();
    assert!(levels.len() >= 2);
    let totals: Vec<f64> = levels
        .iter()
        .map(|l| {
            let ln_q = diophantine::ln_big(&l.point.q);
            error_budget_l45(24.0 * ln_q, l.ln_gap, ln_q, 0.01).0.ln_total
        })
        .collect();
    assert!(totals.windows(2).all(|w| w[1] < w[0]), "{totals:?}");
}

#[test]
fn haar_is_additive_over_disjoint_bands() {
    let whole = haar_integral(&TestFn::YAbove(2.0), 64, 1e-9).unwrap().value;
    let lower = haar_integral(&TestFn::YBand { lo: 2.0, hi: 4.0 }, 64, 1e-9).unwrap().value;
    let upper = haar_integral(&TestFn::YAbove(4.0), 64, 1e-9).unwrap().value;
    assert!((whole - lower - upper).abs() < 1e-9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn period_integral_of_one_is_exact(p in -200i64..200, q in 1i64..12) {
        prop_assume!(p.gcd(&q) == 1);
        let e = period_integral(&TestFn::One, &make_periodic_point(p, q).unwrap(), 0, 1e-6).unwrap();
        prop_assert_eq!(e.value, 1.0);
    }

    #[test]
    fn only_multiples_of_q_squared_fix(p in -1000i64..1000, q in 1i64..400, s in 1i64..1_000_000) {
        prop_assume!(p.gcd(&q) == 1);
        let pt = make_periodic_point(p, q).unwrap();
        prop_assert_eq!(pt.fixes(&BigInt::from(s)), s % (q * q) == 0);
    }

    #[test]
    fn geodesic_conjugation_rescales_horocycle(t in -3.0f64..3.0, s in -50.0f64..50.0) {
        let lhs = GroupElement::a_t(t).compose(&GroupElement::u0(s)).compose(&GroupElement::a_t(-t));
        let rhs = GroupElement::u0((-t).exp() * s);
        prop_assert!(lhs.distance_projective(&rhs) < 1e-12 * (1.0 + s.abs() * (-t).exp()));
    }

    #[test]
    fn translated_point_closes_after_scaled_period(p in -20i64..20, q in 1i64..8, t in -2.0f64..2.0, s0 in 0.0f64..3.0) {
        prop_assume!(p.gcd(&q) == 1);
        let pt = make_periodic_point(p, q).unwrap();
        // Gamma (a_t g)^{-1} = Gamma g^{-1} a_{-t}
        let h = horocycle_base(Dd::new(p as f64) / Dd::new(q as f64)).mul_a_neg(t);
        let period = Dd::new(pt.translated_period(t));
        let a = group_core::reduced_image(&along_horocycle(&h, Dd::new(s0))).unwrap();
        let b = group_core::reduced_image(&along_horocycle(&h, Dd::new(s0) + period)).unwrap();
        prop_assert!(a.distance(&b) < 1e-9, "{:?} {:?}", a, b);
    }
}
