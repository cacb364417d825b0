use diophantine::RealInput;
use experiments_cli::config::{ConstructSpec, ExperimentConfig, PointSpec, Real};
use experiments_cli::orbit::{birkhoff_average, orbit_pass, CoverageGrid, ResolvedPoint, Times};
use experiments_cli::th13::run_th13;
use group_core::Dd;
use periodic_orbits::TestFn;
use proptest::prelude::*;

fn point(x: f64) -> ResolvedPoint {
    ResolvedPoint::from_x(RealInput::Float(x), 20, format!("{x}"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn constant_function_averages_to_one(x in 0.0f64..1.0, gamma in 0.01f64..0.1, n in 1u64..5000) {
        let o = point(x).orbit(Times::Power { c: Dd::ONE, gamma: Dd::new(gamma) });
        prop_assert_eq!(birkhoff_average(&TestFn::One, &o, n).unwrap(), 1.0);
        let sq = point(x).translate(Dd::new(0.3), 2f64.sqrt().ln()).orbit(Times::Squares { alpha: Dd::ONE });
        prop_assert_eq!(birkhoff_average(&TestFn::One, &sq, n).unwrap(), 1.0);
    }

    #[test]
    fn coverage_never_decreases(x in 0.0f64..1.0, cells in 4usize..24) {
        let o = point(x).orbit(Times::Linear { c: Dd::ONE });
        let pass = orbit_pass(&o, &[], &[10, 100, 1000, 5000], CoverageGrid { cells }).unwrap();
        prop_assert!(pass.windows(2).all(|w| w[0].coverage <= w[1].coverage));
        prop_assert!(pass.iter().all(|c| (0.0..=1.0).contains(&c.coverage)));
    }
}

#[test]
fn periodic_point_covers_less_than_a_generic_one() {
    let grid = CoverageGrid { cells: 16 };
    let periodic =
        ResolvedPoint::from_x(RealInput::rational(1, 2), 10, "1/2".into()).orbit(Times::Linear { c: Dd::new(0.01) });
    let generic = point(2f64.sqrt() - 1.0).orbit(Times::Power { c: Dd::ONE, gamma: Dd::new(0.05) });
    let a = orbit_pass(&periodic, &[], &[20_000], grid).unwrap()[0].coverage;
    let b = orbit_pass(&generic, &[], &[20_000], grid).unwrap()[0].coverage;
    assert!(a < b, "{a} vs {b}");
}

#[test]
fn swapping_badly_approximable_alpha_keeps_verdicts() {
    let verdicts = |alpha: &str| {
        let cfg = ExperimentConfig {
            alpha: Some(Real::new(alpha)),
            point: PointSpec { construct: Some(ConstructSpec::pell_100()), ..Default::default() },
            n: Some(200_000),
            cells: Some(32),
            ..Default::default()
        };
        let r = run_th13(&cfg).unwrap().results;
        (r["haar_ok"].clone(), r["coverage_ok"].clone(), r["levels_within_fit"].clone())
    };
    assert_eq!(verdicts("sqrt(2)"), verdicts("golden"));
}
