use std::f64::consts::PI;

use group_core::HalfPlanePoint;

use crate::quadrature::QuadratureEstimate;
use crate::testfn::TestFn;
use crate::OrbitError;

/// `1 / vol(F)`: the fundamental domain has hyperbolic area `pi/3`.
pub const HAAR_NORMALIZATION: f64 = 3.0 / PI;

const MAX_HAAR_GRID: usize = 4096;

fn haar_at(f: &TestFn, n: usize) -> f64 {
    let h = 1.0 / n as f64;
    let mut upper = 0.0;
    let mut lower = 0.0;
    for i in 0..n {
        let x = -0.5 + (i as f64 + 0.5) * h;
        let ymin = (1.0 - x * x).sqrt();
        let mut col_u = 0.0;
        let mut col_l = 0.0;
        for j in 0..n {
            let w = (j as f64 + 0.5) * h;
            // y >= 1 with v = 1/y, so that dy / y^2 = dv
            col_u += f.eval(&HalfPlanePoint { x, y: 1.0 / w });
            let y = ymin + w * (1.0 - ymin);
            col_l += f.eval(&HalfPlanePoint { x, y }) / (y * y);
        }
        upper += col_u;
        lower += col_l * (1.0 - ymin);
    }
    HAAR_NORMALIZATION * (upper + lower) * h * h
}

/// `(3/pi) int_F f(x, y) y^{-2} dx dy` by the midpoint rule on an `n x n` grid in each
/// of the two pieces of `F` split at `y = 1`, doubled until successive values differ by `< tol`.
pub fn haar_integral(f: &TestFn, grid: usize, tol: f64) -> Result<QuadratureEstimate, OrbitError> {
    let mut n = grid.max(8);
    let mut prev = haar_at(f, n);
    loop {
        n *= 2;
        let cur = haar_at(f, n);
        let change = (cur - prev).abs();
        if change < tol {
            return Ok(QuadratureEstimate { value: cur, change, nodes: (2 * n * n) as u64 });
        }
        if n >= MAX_HAAR_GRID {
            return Err(OrbitError::QuadratureUnderResolved { change, nodes: (2 * n * n) as u64 });
        }
        prev = cur;
    }
}
