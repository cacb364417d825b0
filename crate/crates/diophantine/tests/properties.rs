use diophantine::{
    cf_expand, construct_non_dioph, convergents, dioph_type_estimate, lambda_partial, ContinuedFraction, DiophError,
    RealInput,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use proptest::prelude::*;

fn digits() -> impl Strategy<Value = (i64, Vec<i64>)> {
    (-50i64..50, prop::collection::vec(1i64..1_000_000, 1..40))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn determinant_identity((a0, ds) in digits()) {
        let c = convergents(&ContinuedFraction::new(a0, &ds));
        for k in 1..c.len() {
            let det = &c[k].p * &c[k - 1].q - &c[k - 1].p * &c[k].q;
            let expect = if k % 2 == 1 { BigInt::one() } else { -BigInt::one() };
            prop_assert_eq!(det, expect);
        }
    }

    #[test]
    fn convergent_gaps_are_exact((p, q) in (-10_000_000i64..10_000_000, 1i64..10_000_000)) {
        let x = BigRational::new(p.into(), q.into());
        let cf = cf_expand(&RealInput::Rational(x.clone()), 200).unwrap();
        prop_assert!(cf.terminated);
        prop_assert_eq!(cf.value(), x.clone());
        let conv = convergents(&cf);
        for k in 0..conv.len() - 1 {
            let r = BigRational::new(conv[k].p.clone(), conv[k].q.clone());
            let gap = (&x - &r).abs();
            let q2 = &conv[k].q * &conv[k].q;
            prop_assert!(gap < BigRational::new(BigInt::one(), q2));
            let qq = &conv[k].q * &conv[k + 1].q;
            prop_assert!(gap <= BigRational::new(BigInt::one(), qq));
        }
    }

    #[test]
    fn rationals_have_no_type((p, q) in (-100_000i64..100_000, 1i64..100_000)) {
        let r = dioph_type_estimate(&RealInput::rational(p, q), 30);
        prop_assert!(matches!(r, Err(DiophError::PrecisionExhausted { .. })), "{:?}", r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn constructed_numbers_meet_their_type(prefix in prop::collection::vec(1i64..5, 1..6), mu in 3u32..30) {
        let mut full = vec![0i64];
        full.extend(prefix);
        let x = construct_non_dioph(&full, mu, 3);
        prop_assert!(x.verify_type());
        let (lo, hi) = x.enclosure();
        for (_, a) in &x.approximants {
            let r = BigRational::new(a.p.clone(), a.q.clone());
            let worst = (&lo - &r).abs().max((&hi - &r).abs());
            let bound = BigRational::new(BigInt::one(), num_traits::Pow::pow(&a.q, mu));
            prop_assert!(worst <= bound);
        }
    }

    #[test]
    fn lambda_monotone_with_log_envelope(d in prop::sample::select(vec![2i64, 3, 5, 6, 7, 10, 11, 13]), n in 100u64..4000) {
        let alpha = (d as f64).sqrt().fract();
        let bound = cf_expand(&RealInput::sqrt(d), 30).unwrap().digits.iter().max().unwrap().clone();
        let b: f64 = bound.to_string().parse().unwrap();
        let s1 = lambda_partial(alpha, 2.0, n).unwrap();
        let s2 = lambda_partial(alpha, 2.0, 2 * n).unwrap();
        prop_assert!(s2 >= s1);
        // sum_{n<=N} 1/<n alpha> grows like N log N for bounded type.
        prop_assert!(s2 - s1 < 2.0 * (b + 2.0) * (1.0 + (n as f64).ln()) / n as f64, "{} vs {}", s2 - s1, n);
    }
}
