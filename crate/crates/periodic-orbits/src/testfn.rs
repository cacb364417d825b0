use std::f64::consts::PI;
use std::fmt;

use group_core::HalfPlanePoint;

use crate::haar::HAAR_NORMALIZATION;

/// Test functions on the quotient that depend on the reduced base point only.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TestFn {
    One,
    /// Indicator of `y > c`.
    YAbove(f64),
    /// Indicator of `lo < y <= hi`.
    YBand {
        lo: f64,
        hi: f64,
    },
    /// `psi(rho / r)` with `rho` the hyperbolic distance to `(x, y)` and
    /// `psi(u) = exp(1 - 1/(1 - u^2))` on `|u| < 1`.
    Bump {
        x: f64,
        y: f64,
        r: f64,
    },
}

pub const BUMP_RADIUS: f64 = 0.15;
pub const BUMP_CENTERS: [(f64, f64); 4] = [(0.0, 1.25), (0.2, 1.6), (-0.2, 1.6), (0.0, 2.5)];

fn psi(u: f64) -> f64 {
    if u.abs() >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - u * u)).exp()
    }
}

impl TestFn {
    /// A bump whose support stays inside the interior of the fundamental domain.
    pub fn bump(x: f64, y: f64, r: f64) -> Option<TestFn> {
        let c = HalfPlanePoint::new(x, y)?;
        let to_sides = ((0.5 - x.abs()) / y).asinh();
        let to_circle = ((x * x + y * y - 1.0) / (2.0 * y)).asinh();
        (r > 0.0 && c.in_fundamental_domain(0.0) && to_sides > r && to_circle > r).then_some(TestFn::Bump { x, y, r })
    }

    /// `1`, `y > 2`, `y > 4` and four interior bumps.
    pub fn standard_set() -> Vec<TestFn> {
        let mut v = vec![TestFn::One, TestFn::YAbove(2.0), TestFn::YAbove(4.0)];
        v.extend(BUMP_CENTERS.iter().map(|&(x, y)| TestFn::bump(x, y, BUMP_RADIUS).expect("interior bump")));
        v
    }

    pub fn eval(&self, z: &HalfPlanePoint) -> f64 {
        match *self {
            TestFn::One => 1.0,
            TestFn::YAbove(c) => (z.y > c) as u8 as f64,
            TestFn::YBand { lo, hi } => (z.y > lo && z.y <= hi) as u8 as f64,
            TestFn::Bump { x, y, r } => {
                let d = z.distance(&HalfPlanePoint { x, y });
                psi(d / r)
            }
        }
    }

    /// Closed-form Haar integral; for bumps a one-dimensional radial integral.
    pub fn haar_exact(&self) -> Option<f64> {
        match *self {
            TestFn::One => Some(1.0),
            TestFn::YAbove(c) if c >= 1.0 => Some(HAAR_NORMALIZATION / c),
            TestFn::YBand { lo, hi } if lo >= 1.0 && hi >= lo => Some(HAAR_NORMALIZATION * (1.0 / lo - 1.0 / hi)),
            TestFn::Bump { r, .. } => {
                let n = 20_000;
                let h = r / n as f64;
                let g = |rho: f64| psi(rho / r) * rho.sinh();
                let simpson: f64 =
                    (1..n).map(|i| g(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 }).sum::<f64>() * h / 3.0;
                Some(HAAR_NORMALIZATION * 2.0 * PI * simpson)
            }
            _ => None,
        }
    }

    /// Upper bound for `sup |f|` and the first derivatives along the flows.
    pub fn c1_norm(&self) -> f64 {
        match *self {
            TestFn::Bump { r, .. } => 1.0f64.max(2.0 / r),
            _ => 1.0,
        }
    }
}

impl fmt::Display for TestFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TestFn::One => write!(f, "one"),
            TestFn::YAbove(c) => write!(f, "y>{c}"),
            TestFn::YBand { lo, hi } => write!(f, "{lo}<y<={hi}"),
            TestFn::Bump { x, y, r } => write!(f, "bump({x},{y};{r})"),
        }
    }
}
