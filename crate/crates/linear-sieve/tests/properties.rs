use linear_sieve::*;
use num_rational::BigRational;
use proptest::prelude::*;

fn uniform(n: u64, z: f64, level: f64) -> SieveProblem {
    SieveProblem::new(Weights::Uniform(n), z, level, 1e-6).unwrap()
}

#[test]
fn inclusion_exclusion_at_full_size() {
    for z in [2.0, 10.0, 100.0, 1000.0] {
        let p = uniform(100_000, z, z);
        assert_eq!(p.legendre_s_exact().unwrap(), p.legendre_s_inclusion_exclusion().unwrap(), "z = {z}");
    }
}

#[test]
fn sandwich_on_uniform_weights() {
    for n in [10_000u64, 100_000, 1_000_000] {
        for z in [3.0, 5.0, 8.0, 12.0] {
            for s in [1.0, 2.0, 3.0, 4.0, 5.0] {
                let p = uniform(n, z, z.powf(s));
                let rep = jr_bounds(&p).unwrap();
                assert!(rep.sandwiched, "N = {n}, z = {z}, s = {s}: {rep:?}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_paths_agree(weights in prop::collection::vec(0i64..20, 1..400), den in 1i64..9, z in 2.0f64..60.0) {
        let w: Vec<BigRational> = weights.iter().map(|&a| BigRational::new(a.into(), den.into())).collect();
        let p = SieveProblem::new(Weights::Rational(w), z, z, 1e-3).unwrap();
        prop_assert_eq!(p.legendre_s_exact().unwrap(), p.legendre_s_inclusion_exclusion().unwrap());
    }

    #[test]
    fn uniform_remainders(n in 1u64..100_000, z in 2.0f64..40.0) {
        let p = uniform(n, z, 1e4);
        let mut count = 0u64;
        for_each_sieve_divisor(p.primes(), 1e4, |d, _| {
            let r = p.remainder_r(d).unwrap();
            assert!(r.abs() < 1.0);
            if n % d == 0 {
                assert_eq!(r, 0.0);
            }
            count += 1;
        }).unwrap();
        prop_assert!(p.r_total().unwrap() < count as f64);
    }

    #[test]
    fn sifting_more_primes_never_adds(weights in prop::collection::vec(0.0f64..5.0, 1..2000), z1 in 2.0f64..50.0, dz in 0.0f64..50.0) {
        let a = SieveProblem::new(Weights::Real(weights.clone()), z1, 1e3, 1e-3).unwrap();
        let b = SieveProblem::new(Weights::Real(weights), z1 + dz, 1e3, 1e-3).unwrap();
        prop_assert!(b.legendre_s() <= a.legendre_s() + 1e-9);
    }
}
