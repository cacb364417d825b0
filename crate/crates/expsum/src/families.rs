use group_core::Dd;
use num_complex::Complex64;
use rayon::prelude::*;
use sparse_sequences::power_time;

use crate::sum::{block_ranges, cis_turns, tree_sum, DdComplex};

/// A computed sum together with the bound it is compared against.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OscillatorySum {
    pub value: Complex64,
    pub modulus: f64,
    pub n_terms: u64,
    pub bound: f64,
    pub ratio: f64,
}

impl OscillatorySum {
    fn new(value: Complex64, n_terms: u64, bound: f64) -> OscillatorySum {
        let modulus = value.norm();
        OscillatorySum { value, modulus, n_terms, bound, ratio: modulus / bound }
    }
}

/// Partial sums for several frequencies at every grid point, all from one pass.
///
/// `eval(n, acc)` adds the `n`-th term of each family into `acc`. Each segment
/// between consecutive grid points is cut into fixed blocks and tree-reduced,
/// so the result does not depend on the thread count.
fn grid_pass<F>(start: u64, grid: &[u64], families: usize, eval: F) -> Vec<Vec<DdComplex>>
where
    F: Fn(u64, &mut [DdComplex]) + Sync,
{
    let mut out = Vec::with_capacity(grid.len());
    let mut running = vec![DdComplex::default(); families];
    let mut lo = start;
    for &n in grid {
        let hi = n + 1;
        if hi > lo {
            let blocks = block_ranges(lo, hi);
            let partial: Vec<Vec<DdComplex>> = blocks
                .par_iter()
                .map(|&(s, e)| {
                    let mut acc = vec![DdComplex::default(); families];
                    for m in s..e {
                        eval(m, &mut acc);
                    }
                    acc
                })
                .collect();
            for (f, run) in running.iter_mut().enumerate() {
                let col: Vec<DdComplex> = partial.iter().map(|b| b[f]).collect();
                *run = run.add(tree_sum(&col));
            }
            lo = hi;
        }
        out.push(running.clone());
    }
    out
}

#[inline]
fn push(acc: &mut DdComplex, phase: Dd) {
    let (c, s) = cis_turns(phase.centered_frac_f64());
    acc.re = acc.re.add_f64(c);
    acc.im = acc.im.add_f64(s);
}

fn power_bound(gamma: f64, k: i64, l: f64, n: u64) -> f64 {
    let (k, n) = ((k as f64).abs(), n as f64);
    l.sqrt() * (k.sqrt() * n.powf((1.0 + gamma) / 2.0) + n.powf((1.0 - gamma) / 2.0) / k.sqrt())
}

/// `sum_{n<=N} e(k c n^{1+gamma} / l)` for each `k` and each `N` in the increasing `grid`.
pub fn power_sum_grid(c: Dd, gamma: Dd, ks: &[i64], l: f64, grid: &[u64]) -> Vec<Vec<OscillatorySum>> {
    assert!(grid.windows(2).all(|w| w[0] < w[1]), "grid must increase");
    let inv_l = Dd::ONE / Dd::new(l);
    let sums = grid_pass(1, grid, ks.len(), |n, acc| {
        let t = power_time(c, gamma, n) * inv_l;
        for (a, &k) in acc.iter_mut().zip(ks) {
            push(a, t.mul_f64(k as f64));
        }
    });
    ks.iter()
        .enumerate()
        .map(|(i, &k)| {
            grid.iter()
                .zip(&sums)
                .map(|(&n, s)| OscillatorySum::new(s[i].to_complex(), n, power_bound(gamma.to_f64(), k, l, n)))
                .collect()
        })
        .collect()
}

pub fn power_sum(c: Dd, gamma: Dd, k: i64, l: f64, n: u64) -> OscillatorySum {
    power_sum_grid(c, gamma, &[k], l, &[n])[0][0]
}

fn quad_bound(k: i64, l: u64, terms: u64, eps: f64) -> f64 {
    (terms as f64).powf(0.5 + eps) * (k as f64).abs().powf(0.5 + eps) * (l as f64).sqrt()
}

#[inline]
fn quad_phase(alpha: Dd, k: i64, inv_l: Dd, n: u64) -> Dd {
    let kn2 = Dd::from_i128(k as i128 * n as i128 * n as i128);
    alpha * kn2 * inv_l
}

/// `sum_{M < n <= N} e(k alpha n^2 / l)` at each `N` of the grid.
pub fn quad_sum_grid(alpha: Dd, k: i64, l: u64, m: u64, grid: &[u64], eps: f64) -> Vec<OscillatorySum> {
    assert!(grid.windows(2).all(|w| w[0] < w[1]) && grid.first().is_none_or(|&g| g > m));
    let inv_l = Dd::ONE / Dd::new(l as f64);
    let sums = grid_pass(m + 1, grid, 1, |n, acc| push(&mut acc[0], quad_phase(alpha, k, inv_l, n)));
    grid.iter()
        .zip(&sums)
        .map(|(&n, s)| OscillatorySum::new(s[0].to_complex(), n - m, quad_bound(k, l, n - m, eps)))
        .collect()
}

pub fn quad_sum(alpha: Dd, k: i64, l: u64, m: u64, n: u64, eps: f64) -> OscillatorySum {
    quad_sum_grid(alpha, k, l, m, &[n], eps)[0]
}

/// `sum_q sum_p e(k alpha (q^2 - p^2) / l)` over `M < p, q <= N`, which equals `|S|^2`.
pub fn vdc_expanded(alpha: Dd, k: i64, l: u64, m: u64, n: u64) -> Complex64 {
    let inv_l = Dd::ONE / Dd::new(l as f64);
    let phases: Vec<Dd> = (m + 1..=n).map(|q| quad_phase(alpha, k, inv_l, q).frac()).collect();
    let rows: Vec<DdComplex> = phases
        .par_iter()
        .map(|&uq| {
            let mut acc = DdComplex::default();
            for &up in &phases {
                push(&mut acc, uq - up);
            }
            acc
        })
        .collect();
    tree_sum(&rows).to_complex()
}

/// Differenced form `sum_h sum_p e(k alpha h (2p + h) / l)` with `q = p + h`.
pub fn vdc_differenced(alpha: Dd, k: i64, l: u64, m: u64, n: u64) -> Complex64 {
    let inv_l = Dd::ONE / Dd::new(l as f64);
    let len = (n - m) as i64;
    let hs: Vec<i64> = (-(len - 1)..len).collect();
    let rows: Vec<DdComplex> = hs
        .par_iter()
        .map(|&h| {
            let mut acc = DdComplex::default();
            let p_lo = (m as i64 + 1).max(m as i64 + 1 - h);
            let p_hi = (n as i64).min(n as i64 - h);
            for p in p_lo..=p_hi {
                let w = Dd::from_i128(k as i128 * h as i128 * (2 * p as i128 + h as i128));
                push(&mut acc, alpha * w * inv_l);
            }
            acc
        })
        .collect();
    tree_sum(&rows).to_complex()
}
