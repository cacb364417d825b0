use group_core::Dd;
use num_complex::Complex64;
use rayon::prelude::*;

/// Terms per block; blocks are the unit of parallel work and of the reduction tree.
pub const BLOCK: u64 = 1 << 14;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub(crate) struct DdComplex {
    pub re: Dd,
    pub im: Dd,
}

impl DdComplex {
    pub fn add(self, o: DdComplex) -> DdComplex {
        DdComplex { re: self.re + o.re, im: self.im + o.im }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

#[inline]
pub(crate) fn cis_turns(phase: f64) -> (f64, f64) {
    let (s, c) = (std::f64::consts::TAU * phase).sin_cos();
    (c, s)
}

/// Pairwise reduction with a shape fixed by the number of leaves.
pub(crate) fn tree_sum(v: &[DdComplex]) -> DdComplex {
    match v.len() {
        0 => DdComplex::default(),
        1 => v[0],
        n => tree_sum(&v[..n / 2]).add(tree_sum(&v[n / 2..])),
    }
}

pub(crate) fn block_ranges(lo: u64, hi: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut s = lo;
    while s < hi {
        let e = (s + BLOCK).min(hi);
        out.push((s, e));
        s = e;
    }
    out
}

/// `sum_{n in [lo, hi)} e(phase(n))`; phases are in turns, reduced by the caller.
pub fn exp_sum_indexed<F>(lo: u64, hi: u64, phase: F, parallel: bool) -> Complex64
where
    F: Fn(u64) -> f64 + Sync,
{
    let blocks = block_ranges(lo, hi);
    let one = |&(s, e): &(u64, u64)| {
        let mut acc = DdComplex::default();
        for n in s..e {
            let (c, si) = cis_turns(phase(n));
            acc.re = acc.re.add_f64(c);
            acc.im = acc.im.add_f64(si);
        }
        acc
    };
    let partial: Vec<DdComplex> =
        if parallel { blocks.par_iter().map(one).collect() } else { blocks.iter().map(one).collect() };
    tree_sum(&partial).to_complex()
}

/// `sum e(phi_n)` over a materialized phase list.
pub fn raw_exp_sum(phases: &[f64]) -> Complex64 {
    exp_sum_indexed(0, phases.len() as u64, |n| phases[n as usize] - phases[n as usize].round(), true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_phase() {
        let z = raw_exp_sum(&[0.0; 100]);
        assert_eq!(z, Complex64::new(100.0, 0.0));
    }

    #[test]
    fn alternating() {
        let p: Vec<f64> = (1..=100).map(|n| n as f64 / 2.0).collect();
        assert!(raw_exp_sum(&p).norm() < 1e-12);
    }

    #[test]
    fn full_period_of_i() {
        let p: Vec<f64> = (1..=4).map(|n| n as f64 * 0.25).collect();
        assert!(raw_exp_sum(&p).norm() < 1e-15);
    }

    #[test]
    fn parallel_equals_serial_bitwise() {
        let f = |n: u64| ((n as f64).sqrt() * 1.618).fract();
        let a = exp_sum_indexed(1, 300_001, f, true);
        let b = exp_sum_indexed(1, 300_001, f, false);
        assert_eq!(a.re.to_bits(), b.re.to_bits());
        assert_eq!(a.im.to_bits(), b.im.to_bits());
    }
}
