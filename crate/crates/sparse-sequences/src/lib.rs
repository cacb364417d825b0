//! Sampling times and the integer sets they are drawn from.

mod factor;
mod primes;
mod times;

pub use factor::{factorize, Factorization, MAX_FACTOR_INPUT};
pub use primes::{almost_primes, omega_table, primes_below, rough_count, rough_numbers};
pub use times::{gen_times, gen_times_dd, power_time, SequenceKind, SequenceSpec, MAX_SEQUENCE_LEN};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SequenceError {
    #[error("{n} exceeds the trial-division limit")]
    FactorizationTooLarge { n: u64 },
    #[error("invalid sequence: {0}")]
    InvalidSpec(String),
}
