//! Orbit points, Birkhoff averages and cell coverage.

use diophantine::{cf_expand, construct_non_dioph, ContinuedFraction, RealInput};
use group_core::{bruhat_decompose, reduced_image, Branch, Dd, DdMat, GroupElement, GroupError, HalfPlanePoint};
use periodic_orbits::{along_horocycle, horocycle_base, TestFn, SUM_BLOCK};
use rayon::prelude::*;
use sparse_sequences::power_time;

use crate::config::{ConstructSpec, PointSpec};
use crate::CliError;

/// Sampling times `t_n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Times {
    /// `c n^{1+gamma}`.
    Power { c: Dd, gamma: Dd },
    /// `alpha n^2`.
    Squares { alpha: Dd },
    /// `c n`.
    Linear { c: Dd },
}

impl Times {
    #[inline]
    pub fn at(&self, n: u64) -> Dd {
        match *self {
            Times::Power { c, gamma } => power_time(c, gamma, n),
            Times::Squares { alpha } => alpha * Dd::from_i128(n as i128 * n as i128),
            Times::Linear { c } => c.mul_f64(n as f64),
        }
    }

    fn scaled(self, k: Dd) -> Times {
        match self {
            Times::Power { c, gamma } => Times::Power { c: c * k, gamma },
            Times::Squares { alpha } => Times::Squares { alpha: alpha * k },
            Times::Linear { c } => Times::Linear { c: c * k },
        }
    }
}

/// A point `L (1 0; x 1) Gamma`, stored through `x` and `right = L^{-1}`.
#[derive(Clone, Debug)]
pub struct ResolvedPoint {
    pub x: Dd,
    pub cf: Option<ContinuedFraction>,
    pub right: DdMat,
    /// Factor by which `L` rescales horocycle time.
    pub time_scale: Dd,
    pub label: String,
}

fn dd_mat(g: &GroupElement) -> DdMat {
    DdMat::from(g)
}

impl ResolvedPoint {
    pub fn from_x(x: RealInput, cf_depth: usize, label: String) -> ResolvedPoint {
        let cf = cf_expand(&x, cf_depth).ok();
        ResolvedPoint { x: x.to_dd(), cf, right: DdMat::IDENTITY, time_scale: Dd::ONE, label }
    }

    pub fn from_construction(spec: &ConstructSpec) -> ResolvedPoint {
        let nd = construct_non_dioph(&spec.prefix, spec.mu, spec.extra);
        let label = format!("construct{:?}^{}", spec.prefix, spec.mu);
        ResolvedPoint { x: nd.cf.to_dd(), cf: Some(nd.cf), right: DdMat::IDENTITY, time_scale: Dd::ONE, label }
    }

    /// Applies `L -> u0(s) a_t L` on the left, which multiplies horocycle time by `e^t`.
    pub fn translate(mut self, s: Dd, t: f64) -> ResolvedPoint {
        let left_inv = dd_mat(&GroupElement::a_t(-t)).mul(&DdMat::new(Dd::ONE, -s, Dd::ZERO, Dd::ONE));
        self.right = self.right.mul(&left_inv);
        self.time_scale = self.time_scale * Dd::new(t).exp();
        self
    }

    pub fn orbit(&self, times: Times) -> Orbit {
        Orbit { h: horocycle_base(self.x), right: self.right, times: times.scaled(self.time_scale) }
    }
}

pub fn resolve_point(spec: &PointSpec, default: &ConstructSpec, cf_depth: usize) -> Result<ResolvedPoint, CliError> {
    let s = match &spec.s {
        Some(r) => r.dd()?,
        None => Dd::ZERO,
    };
    let set = [spec.x.is_some(), spec.construct.is_some(), spec.g.is_some()].iter().filter(|b| **b).count();
    if set > 1 {
        return Err(CliError::Precondition("give at most one of point.x, point.construct, point.g".into()));
    }
    let base = if let Some(g) = &spec.g {
        let e = [g[0].f64()?, g[1].f64()?, g[2].f64()?, g[3].f64()?];
        let g = GroupElement::new(e[0], e[1], e[2], e[3])
            .ok_or_else(|| CliError::Precondition("point.g must have positive determinant".into()))?;
        let b = bruhat_decompose(&g);
        if b.branch == Branch::OmegaAUMinus {
            return Err(CliError::Precondition("point.g lies in the small Bruhat cell (d = 0)".into()));
        }
        ResolvedPoint::from_x(RealInput::Float(b.y), cf_depth, format!("bruhat(y={})", b.y))
            .translate(Dd::new(b.s), b.t)
    } else if let Some(c) = &spec.construct {
        ResolvedPoint::from_construction(c)
    } else if let Some(x) = &spec.x {
        ResolvedPoint::from_x(x.exact()?, cf_depth, format!("x={}", x.0))
    } else {
        ResolvedPoint::from_construction(default)
    };
    Ok(if s.hi != 0.0 { base.translate(s, 0.0) } else { base })
}

/// The sequence of orbit points `u0(t_n) p`.
#[derive(Clone, Copy, Debug)]
pub struct Orbit {
    h: DdMat,
    right: DdMat,
    times: Times,
}

impl Orbit {
    #[inline]
    pub fn point(&self, n: u64) -> Result<HalfPlanePoint, GroupError> {
        reduced_image(&along_horocycle(&self.h, self.times.at(n)).mul(&self.right))
    }

    /// Base point at continuous time `t`, unscaled.
    pub fn at_time(&self, t: Dd) -> Result<HalfPlanePoint, GroupError> {
        reduced_image(&along_horocycle(&self.h, t).mul(&self.right))
    }
}

/// Equal cells on `|x| <= 1/2`, `1 <= y <= 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoverageGrid {
    pub cells: usize,
}

pub const WINDOW_Y_MAX: f64 = 3.0;

impl CoverageGrid {
    pub fn index(&self, z: &HalfPlanePoint) -> Option<usize> {
        if z.x.abs() > 0.5 || z.y < 1.0 || z.y > WINDOW_Y_MAX {
            return None;
        }
        let m = self.cells;
        let i = (((z.x + 0.5) * m as f64) as usize).min(m - 1);
        let j = (((z.y - 1.0) / (WINDOW_Y_MAX - 1.0) * m as f64) as usize).min(m - 1);
        Some(j * m + i)
    }
}

/// Averages of each test function and coverage after the first `n` points.
#[derive(Clone, Debug, PartialEq)]
pub struct Checkpoint {
    pub n: u64,
    pub averages: Vec<f64>,
    pub coverage: f64,
}

/// Per-function sums and visited cells of one summation block.
type BlockTally = (Vec<Dd>, Vec<usize>);

fn tree(v: &[Vec<Dd>], k: usize) -> Dd {
    match v.len() {
        0 => Dd::ZERO,
        1 => v[0][k],
        n => tree(&v[..n / 2], k) + tree(&v[n / 2..], k),
    }
}

/// One pass over `n = 1..=max(checkpoints)`, reporting at each checkpoint.
///
/// Sums are accumulated per fixed block and combined along a fixed tree, so the
/// output is the same for every thread count.
pub fn orbit_pass(
    orbit: &Orbit,
    fns: &[TestFn],
    checkpoints: &[u64],
    grid: CoverageGrid,
) -> Result<Vec<Checkpoint>, GroupError> {
    assert!(checkpoints.windows(2).all(|w| w[0] < w[1]), "checkpoints must increase");
    assert!(grid.cells >= 1);
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut running = vec![Dd::ZERO; fns.len()];
    let mut visited = vec![false; grid.cells * grid.cells];
    let mut lo = 1u64;
    for &n in checkpoints {
        let hi = n + 1;
        if hi > lo {
            let starts: Vec<u64> = (lo..hi).step_by(SUM_BLOCK as usize).collect();
            let blocks: Result<Vec<BlockTally>, GroupError> = starts
                .par_iter()
                .map(|&s| {
                    let mut acc = vec![Dd::ZERO; fns.len()];
                    let mut cells = Vec::new();
                    for m in s..(s + SUM_BLOCK).min(hi) {
                        let z = orbit.point(m)?;
                        for (a, f) in acc.iter_mut().zip(fns) {
                            *a = a.add_f64(f.eval(&z));
                        }
                        if let Some(c) = grid.index(&z) {
                            cells.push(c);
                        }
                    }
                    Ok((acc, cells))
                })
                .collect();
            let blocks = blocks?;
            let sums: Vec<Vec<Dd>> = blocks.iter().map(|b| b.0.clone()).collect();
            for (k, r) in running.iter_mut().enumerate() {
                *r = *r + tree(&sums, k);
            }
            for (_, cells) in &blocks {
                for &c in cells {
                    visited[c] = true;
                }
            }
            lo = hi;
        }
        let count = Dd::new(n as f64);
        let averages = running.iter().map(|s| if n == 0 { 0.0 } else { (*s / count).to_f64() }).collect();
        let coverage = visited.iter().filter(|v| **v).count() as f64 / visited.len() as f64;
        out.push(Checkpoint { n, averages, coverage });
    }
    Ok(out)
}

/// `(1/N) sum_{n <= N} f(u0(t_n) p)`.
pub fn birkhoff_average(f: &TestFn, orbit: &Orbit, n: u64) -> Result<f64, GroupError> {
    Ok(orbit_pass(orbit, std::slice::from_ref(f), &[n], CoverageGrid { cells: 1 })?[0].averages[0])
}

/// Fraction of coverage cells visited by the first `n` points.
pub fn density_probe(orbit: &Orbit, n: u64, cells: usize) -> Result<f64, GroupError> {
    Ok(orbit_pass(orbit, &[], &[n], CoverageGrid { cells })?[0].coverage)
}

/// Increasing checkpoints: decades below `n`, the extra values, and `n` itself.
pub fn checkpoints(n: u64, extra: &[u64]) -> Vec<u64> {
    let mut v: Vec<u64> = std::iter::successors(Some(1000u64), |d| d.checked_mul(10)).take_while(|&d| d < n).collect();
    v.extend(extra.iter().copied().filter(|&e| e >= 1 && e <= n));
    v.push(n);
    v.sort_unstable();
    v.dedup();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn generic() -> Orbit {
        ResolvedPoint::from_x(RealInput::sqrt(2), 30, "sqrt2".into())
            .orbit(Times::Power { c: Dd::ONE, gamma: Dd::new(0.05) })
    }

    #[test]
    fn constant_average_is_exactly_one() {
        assert_eq!(birkhoff_average(&TestFn::One, &generic(), 12_345).unwrap(), 1.0);
    }

    #[test]
    fn single_point_visits_one_cell() {
        let o =
            ResolvedPoint::from_x(RealInput::rational(0, 1), 10, "0".into()).orbit(Times::Linear { c: Dd::new(0.25) });
        assert_eq!(density_probe(&o, 1, 8).unwrap(), 1.0 / 64.0);
    }

    #[test]
    fn cusp_indicator() {
        // The identity coset sits on the closed horocycle at height 1.
        let o = ResolvedPoint::from_x(RealInput::rational(0, 1), 10, "0".into())
            .orbit(Times::Power { c: Dd::ONE, gamma: Dd::new(0.05) });
        assert_eq!(birkhoff_average(&TestFn::YAbove(2.0), &o, 100_000).unwrap(), 0.0);
        let avg = birkhoff_average(&TestFn::YAbove(2.0), &generic(), 100_000).unwrap();
        assert!((avg - 3.0 / (2.0 * std::f64::consts::PI)).abs() < 0.05, "{avg}");
    }

    #[test]
    fn coverage_is_monotone() {
        let pass = orbit_pass(&generic(), &[TestFn::One], &[100, 1_000, 10_000], CoverageGrid { cells: 16 }).unwrap();
        assert!(pass.windows(2).all(|w| w[0].coverage <= w[1].coverage));
    }

    #[test]
    fn translation_rescales_time() {
        let alpha = 2f64.sqrt();
        let p = ResolvedPoint::from_x(RealInput::rational(1, 3), 10, "".into()).translate(Dd::new(0.7), alpha.ln());
        assert!((p.time_scale.to_f64() - alpha).abs() < 1e-15);
        // L u0(alpha t) (1 0; x 1) Gamma == u0(t) L (1 0; x 1) Gamma
        let g =
            GroupElement::u0(0.7).compose(&GroupElement::a_t(alpha.ln())).compose(&GroupElement::u_minus(1.0 / 3.0));
        let t = 5.3;
        let direct = group_core::reduce_psl2z(&GroupElement::u0(t).compose(&g).invert()).unwrap().base_point();
        let via = p.orbit(Times::Linear { c: Dd::ONE }).at_time(Dd::new(t) * p.time_scale).unwrap();
        assert!(direct.distance(&via) < 1e-10, "{direct:?} {via:?}");
    }

    #[test]
    fn checkpoint_schedule() {
        assert_eq!(checkpoints(50_000, &[2_000, 60_000]), vec![1_000, 2_000, 10_000, 50_000]);
    }
}
