//! The linear sieve with density `g(d) = 1/d`: exact sifted sums, remainder
//! terms, the density product `V(z)`, and the upper and lower bound assembly.

mod bounds;
mod functions;
mod problem;
mod table;

pub use bounds::{jr_bounds, SieveReport};
pub use functions::{sieve_f_lower, sieve_f_upper, S_MAX, S_MIN};
pub use problem::{for_each_sieve_divisor, SieveProblem, Weights, MAX_DIVISORS};
pub use table::{empirical_u1, mertens_check, mertens_ratio, v_of_z, MAX_TABLE_Z};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SieveError {
    #[error("more than {limit} squarefree divisors qualify")]
    DivisorExplosion { limit: u64 },
    #[error("sieve level s = {s} outside the implemented range [1, 5]")]
    RangeUnsupported { s: f64 },
    #[error("{d} is not a squarefree divisor of P(z)")]
    NotSieveDivisor { d: u64 },
    #[error("invalid sieve problem: {0}")]
    InvalidProblem(String),
}
