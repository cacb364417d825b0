use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::cf::{convergents, ContinuedFraction, RationalApprox};

/// A number with prescribed very good rational approximations.
#[derive(Clone, Debug)]
pub struct NonDiophantine {
    pub cf: ContinuedFraction,
    pub mu: u32,
    /// Convergent levels whose next digit follows the schedule, with their approximations.
    pub approximants: Vec<(usize, RationalApprox)>,
}

/// Extends `prefix = [a0; a1, ..., am]` by `a_{k+1} = q_k^{mu-2}` for `extra` further digits.
///
/// Every level `k >= m` then satisfies `|x - p_k/q_k| < 1/(q_k q_{k+1}) <= q_k^{-mu}`.
pub fn construct_non_dioph(prefix: &[i64], mu: u32, extra: usize) -> NonDiophantine {
    assert!(!prefix.is_empty() && mu >= 2, "prefix needs a0 and mu >= 2");
    let mut cf = ContinuedFraction::new(prefix[0], &prefix[1..]);
    let m = prefix.len() - 1;
    // Running convergent denominators q_{k-1}, q_k.
    let (mut q_prev, mut q) = (BigInt::one(), BigInt::zero());
    for k in 0..=m {
        let a = cf.digit(k).expect("prefix digit").clone();
        let next = &a * &q + &q_prev;
        q_prev = std::mem::replace(&mut q, next);
    }
    for _ in 0..extra {
        let a: BigInt = Pow::pow(&q, mu - 2);
        let next = &a * &q + &q_prev;
        cf.digits.push(a);
        q_prev = std::mem::replace(&mut q, next);
    }
    let conv = convergents(&cf);
    let approximants = (m..m + extra).filter(|&k| k + 1 < conv.len()).map(|k| (k, conv[k].clone())).collect();
    NonDiophantine { cf, mu, approximants }
}

/// The type-100 construction started from `[0; 1]`.
pub fn construct_non_dioph_100() -> NonDiophantine {
    construct_non_dioph(&[0, 1], 100, 3)
}

impl NonDiophantine {
    /// Exact check of `1/(q_k q_{k+1}) <= q_k^{-mu}` at every emitted level.
    pub fn verify_type(&self) -> bool {
        let conv = convergents(&self.cf);
        self.approximants.iter().all(|(k, a)| {
            let lhs: BigInt = Pow::pow(&a.q, self.mu);
            lhs <= &a.q * &conv[k + 1].q
        })
    }

    /// Exact rational interval `[lo, hi]` containing the infinite continuation.
    pub fn enclosure(&self) -> (BigRational, BigRational) {
        let conv = convergents(&self.cf);
        let n = conv.len();
        let a = BigRational::new(conv[n - 1].p.clone(), conv[n - 1].q.clone());
        let b = BigRational::new(conv[n - 2].p.clone() + &conv[n - 1].p, conv[n - 2].q.clone() + &conv[n - 1].q);
        if a < b {
            (a, b)
        } else {
            (b, a)
        }
    }
}
