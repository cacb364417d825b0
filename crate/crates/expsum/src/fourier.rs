use std::collections::BTreeMap;
use std::f64::consts::TAU;

use group_core::Dd;
use num_complex::Complex64;

use crate::families::power_sum_grid;
use crate::ExpSumError;

/// Real trigonometric polynomial of period `l`, stored by its complex coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierPoly {
    pub l: f64,
    pub coeffs: BTreeMap<i64, Complex64>,
}

impl FourierPoly {
    /// Rejects coefficient sets that do not describe a real function.
    pub fn new(l: f64, coeffs: BTreeMap<i64, Complex64>) -> Result<FourierPoly, ExpSumError> {
        if !(l > 0.0 && l.is_finite()) {
            return Err(ExpSumError::InvalidInput(format!("period {l}")));
        }
        for (&k, &a) in &coeffs {
            let b = coeffs.get(&-k).copied().unwrap_or_default();
            if (a - b.conj()).norm() > 1e-15 * (1.0 + a.norm()) {
                return Err(ExpSumError::InvalidInput(format!("a_{k} and a_{} are not conjugate", -k)));
            }
        }
        Ok(FourierPoly { l, coeffs })
    }

    /// `a0 + sum (A_k cos(2 pi k x / l) + B_k sin(2 pi k x / l))`.
    pub fn from_cos_sin(l: f64, a0: f64, terms: &[(i64, f64, f64)]) -> Result<FourierPoly, ExpSumError> {
        let mut coeffs = BTreeMap::new();
        if a0 != 0.0 {
            coeffs.insert(0, Complex64::new(a0, 0.0));
        }
        for &(k, a, b) in terms {
            if k <= 0 {
                return Err(ExpSumError::InvalidInput(format!("frequency {k} must be positive")));
            }
            *coeffs.entry(k).or_default() += Complex64::new(a / 2.0, -b / 2.0);
            *coeffs.entry(-k).or_default() += Complex64::new(a / 2.0, b / 2.0);
        }
        FourierPoly::new(l, coeffs)
    }

    pub fn mean(&self) -> f64 {
        self.coeffs.get(&0).map_or(0.0, |a| a.re)
    }

    pub fn max_frequency(&self) -> i64 {
        self.coeffs.keys().map(|k| k.abs()).max().unwrap_or(0)
    }

    /// `f^{(m)}(x)`.
    pub fn derivative(&self, m: u32, x: f64) -> f64 {
        let mut s = Complex64::default();
        for (&k, &a) in &self.coeffs {
            let w = TAU * k as f64 / self.l;
            let factor = Complex64::new(0.0, w).powu(m);
            s += a * factor * Complex64::from_polar(1.0, w * x);
        }
        s.re
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.derivative(0, x)
    }

    /// `max_{j <= m} sup |f^{(j)}|`, sampled on a grid fine enough for the top frequency.
    pub fn sup_norm(&self, m: u32) -> f64 {
        let samples = 64 * (self.max_frequency().max(1) as usize);
        (0..=m)
            .map(|j| {
                (0..samples).map(|i| self.derivative(j, self.l * i as f64 / samples as f64).abs()).fold(0.0, f64::max)
            })
            .fold(0.0, f64::max)
    }

    /// `sum_{k != 0} |a_k| (2 pi |k| / l)^m`, an upper bound for `sup |f^{(m)}|`.
    pub fn derivative_bound(&self, m: u32) -> f64 {
        self.coeffs
            .iter()
            .filter(|(&k, _)| k != 0)
            .map(|(&k, a)| a.norm() * (TAU * k.abs() as f64 / self.l).powi(m as i32))
            .sum()
    }

    fn positive(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs.range(1..).map(|(&k, &a)| (k, a))
    }
}

/// `|sum_{n<=N} f(t_n) - N mean(f)|` with `t_n = c n^{1+gamma}`, and the bound `l^3 N^{(1+gamma)/2} ||f||_{2,inf}`.
pub fn periodic_deficit_power_grid(f: &FourierPoly, c: Dd, gamma: Dd, grid: &[u64]) -> Vec<(f64, f64)> {
    let ks: Vec<i64> = f.positive().map(|(k, _)| k).collect();
    let sums = power_sum_grid(c, gamma, &ks, f.l, grid);
    let norm = f.sup_norm(2);
    let g = gamma.to_f64();
    grid.iter()
        .enumerate()
        .map(|(j, &n)| {
            let total: f64 = f.positive().zip(&sums).map(|((_, a), s)| 2.0 * (a * s[j].value).re).sum();
            (total.abs(), f.l.powi(3) * (n as f64).powf((1.0 + g) / 2.0) * norm)
        })
        .collect()
}

pub fn periodic_deficit_power(f: &FourierPoly, c: Dd, gamma: Dd, n: u64) -> (f64, f64) {
    periodic_deficit_power_grid(f, c, gamma, &[n])[0]
}

/// Averaged deficit of `f` along `c d, 2 c d, ..., K c d`, and its bound
/// `d^mu l^{m} ||f||_{m,inf} / K` with `m = floor(mu) + 8`.
pub fn progression_deficit(f: &FourierPoly, c: Dd, d: u64, k_steps: u64, mu: f64) -> Result<(f64, f64), ExpSumError> {
    if k_steps == 0 {
        return Err(ExpSumError::InvalidInput("empty progression".into()));
    }
    let step = c.mul_f64(d as f64) / Dd::new(f.l);
    let mut total = 0.0;
    for (k, a) in f.positive() {
        let theta = step.mul_f64(k as f64).frac();
        let t = theta.to_f64();
        let dist = t.min(1.0 - t);
        if dist < 1e-14 {
            return Err(ExpSumError::ResonanceDetected { k, value: dist });
        }
        let e1 = Complex64::from_polar(1.0, TAU * theta.centered_frac_f64());
        let ek = Complex64::from_polar(1.0, TAU * theta.mul_f64(k_steps as f64).centered_frac_f64());
        let g = e1 * (ek - 1.0) / (e1 - 1.0);
        total += 2.0 * (a * g).re;
    }
    let m = mu.floor() as u32 + 8;
    let bound = (d as f64).powf(mu) * f.l.powi(m as i32) * f.sup_norm(m) / k_steps as f64;
    Ok((total.abs() / k_steps as f64, bound))
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecayReport {
    /// `a_0, ..., a_{k_max}`.
    pub coeffs: Vec<Complex64>,
    /// `l^2 ||f||_{2,inf} / (4 pi^2 k^2)`, with index 0 unused.
    pub envelope: Vec<f64>,
    pub norm: f64,
    pub nodes: usize,
    pub within_envelope: bool,
}

const DECAY_TOL: f64 = 1e-8;
const MAX_DECAY_NODES: usize = 1 << 22;

fn trapezoid(samples: &[f64], k_max: i64) -> Vec<Complex64> {
    let n = samples.len() as f64;
    (0..=k_max)
        .map(|k| {
            samples
                .iter()
                .enumerate()
                .map(|(j, &v)| v * Complex64::from_polar(1.0, -TAU * ((k * j as i64) as f64 / n).fract()))
                .sum::<Complex64>()
                / n
        })
        .collect()
}

/// Trapezoid Fourier coefficients of a smooth `l`-periodic `f`, checked against the
/// second-derivative decay envelope.
pub fn fourier_decay_check<F: Fn(f64) -> f64>(f: F, l: f64, k_max: i64) -> Result<DecayReport, ExpSumError> {
    if !(l > 0.0) || k_max < 1 {
        return Err(ExpSumError::InvalidInput(format!("l = {l}, k_max = {k_max}")));
    }
    let sample = |n: usize| (0..n).map(|j| f(l * j as f64 / n as f64)).collect::<Vec<f64>>();
    let mut n = (16 * k_max as usize).max(64).next_power_of_two();
    let mut prev = trapezoid(&sample(n), k_max);
    loop {
        n *= 2;
        let samples = sample(n);
        let cur = trapezoid(&samples, k_max);
        let (k, change) = cur
            .iter()
            .zip(&prev)
            .enumerate()
            .map(|(k, (a, b))| (k as i64, (a - b).norm()))
            .fold((0, 0.0), |m, x| if x.1 > m.1 { x } else { m });
        if change <= DECAY_TOL {
            let h = l / n as f64;
            let at = |j: usize| samples[j % n];
            let norm = (0..n)
                .map(|j| {
                    let (a, b, c) = (at(j + n - 1), at(j), at(j + 1));
                    b.abs().max(((c - a) / (2.0 * h)).abs()).max(((c - 2.0 * b + a) / (h * h)).abs())
                })
                .fold(0.0, f64::max);
            let envelope: Vec<f64> = (0..=k_max)
                .map(|k| if k == 0 { f64::INFINITY } else { l * l * norm / (TAU * TAU * (k * k) as f64) })
                .collect();
            let within_envelope = cur.iter().zip(&envelope).skip(1).all(|(a, e)| a.norm() <= *e);
            return Ok(DecayReport { coeffs: cur, envelope, norm, nodes: n, within_envelope });
        }
        if n >= MAX_DECAY_NODES {
            return Err(ExpSumError::QuadratureUnderResolved { k, change });
        }
        prev = cur;
    }
}
