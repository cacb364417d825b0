use group_core::Dd;

use crate::primes::omega_table;
use crate::SequenceError;

pub const MAX_SEQUENCE_LEN: u64 = 1_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SequenceKind {
    /// `t_n = c n^{1+gamma}`.
    PowerSparse { c: Dd, gamma: Dd },
    /// `t_n = alpha n^2`.
    Squares { alpha: Dd },
    /// `t_n = c n` for `n` with at most `l` prime factors.
    AlmostPrimes { l: u32, c: Dd },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SequenceSpec {
    pub kind: SequenceKind,
    pub n_max: u64,
}

impl SequenceSpec {
    pub fn power(c: f64, gamma: f64, n_max: u64) -> SequenceSpec {
        SequenceSpec { kind: SequenceKind::PowerSparse { c: c.into(), gamma: gamma.into() }, n_max }
    }

    pub fn squares(alpha: f64, n_max: u64) -> SequenceSpec {
        SequenceSpec { kind: SequenceKind::Squares { alpha: alpha.into() }, n_max }
    }

    pub fn almost_primes(l: u32, c: f64, n_max: u64) -> SequenceSpec {
        SequenceSpec { kind: SequenceKind::AlmostPrimes { l, c: c.into() }, n_max }
    }

    pub fn validate(&self) -> Result<(), SequenceError> {
        let bad = |m: &str| Err(SequenceError::InvalidSpec(m.into()));
        if self.n_max > MAX_SEQUENCE_LEN {
            return bad("n_max above 1e9");
        }
        match self.kind {
            SequenceKind::PowerSparse { c, gamma } => {
                if !(c.hi > 0.0) {
                    return bad("c must be positive");
                }
                if !(gamma.hi > 0.0 && gamma.hi < 1.0) {
                    return bad("gamma must lie in (0, 1)");
                }
            }
            SequenceKind::Squares { alpha } => {
                if !(alpha.hi > 0.0) {
                    return bad("alpha must be positive");
                }
            }
            SequenceKind::AlmostPrimes { l, c } => {
                if l < 1 {
                    return bad("L must be at least 1");
                }
                if !(c.hi > 0.0) {
                    return bad("c must be positive");
                }
            }
        }
        Ok(())
    }
}

/// `c exp((1+gamma) ln n)` in double-double.
pub fn power_time(c: Dd, gamma: Dd, n: u64) -> Dd {
    if n == 1 {
        return c;
    }
    let ln = Dd::new(n as f64).ln();
    c * (ln * (gamma + Dd::ONE)).exp()
}

/// Times in double-double, in increasing order.
pub fn gen_times_dd(spec: &SequenceSpec) -> Result<Box<dyn Iterator<Item = Dd>>, SequenceError> {
    spec.validate()?;
    let n_max = spec.n_max;
    Ok(match spec.kind {
        SequenceKind::PowerSparse { c, gamma } => Box::new((1..=n_max).map(move |n| power_time(c, gamma, n))),
        SequenceKind::Squares { alpha } => {
            Box::new((1..=n_max).map(move |n| alpha * Dd::from_i128(n as i128 * n as i128)))
        }
        SequenceKind::AlmostPrimes { l, c } => {
            let omega = omega_table(n_max);
            Box::new((1..=n_max).filter(move |&n| omega[n as usize] as u32 <= l).map(move |n| c.mul_f64(n as f64)))
        }
    })
}

pub fn gen_times(spec: &SequenceSpec) -> Result<Box<dyn Iterator<Item = f64>>, SequenceError> {
    Ok(Box::new(gen_times_dd(spec)?.map(Dd::to_f64)))
}
