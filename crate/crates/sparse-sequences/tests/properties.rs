use proptest::prelude::*;
use sparse_sequences::{almost_primes, factorize, gen_times, SequenceSpec};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn omega_is_completely_additive(m in 1u64..1_000_000, n in 1u64..1_000_000) {
        let fm = factorize(m).unwrap();
        let fn_ = factorize(n).unwrap();
        let fmn = factorize(m * n).unwrap();
        prop_assert_eq!(fmn.omega_big, fm.omega_big + fn_.omega_big);
        prop_assert_eq!(fmn.factors.iter().product::<u64>(), m * n);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn almost_primes_nest(l in 1u32..6, n in 1u64..20_000) {
        let small = almost_primes(l, n);
        let big = almost_primes(l + 1, n);
        let mut j = 0;
        for v in small {
            while big[j] < v { j += 1; }
            prop_assert_eq!(big[j], v);
        }
    }

    #[test]
    fn times_increase(c in 0.01f64..100.0, g in 0.01f64..0.99, a in 0.01f64..10.0) {
        for spec in [SequenceSpec::power(c, g, 2_000), SequenceSpec::squares(a, 2_000), SequenceSpec::almost_primes(2, c, 2_000)] {
            let t: Vec<f64> = gen_times(&spec).unwrap().collect();
            prop_assert!(t.windows(2).all(|w| w[1] > w[0]));
        }
    }
}
