//! Continued fractions and Diophantine classification.
//!
//! Real inputs come in four flavours: a binary64 value, an exact rational, an
//! exact quadratic surd `(p + sqrt d)/q`, or an explicit digit list. Digit
//! lists and surds never run out of precision; floats stop as soon as the
//! propagated rounding error makes the next partial quotient unreliable.

mod cf;
mod construct;
mod lambda;
mod profile;

pub use cf::{
    cf_expand, convergents, dioph_type_estimate, gap_log, is_badly_approximable, ln_big, ContinuedFraction,
    RationalApprox, RealInput,
};
pub use construct::{construct_non_dioph, construct_non_dioph_100, NonDiophantine};
pub use lambda::{dist_to_z, lambda_partial};
pub use profile::{lattice_dioph_type, DiophProfile};

use group_core::GroupError;

pub const FLOAT_MAX_DEPTH: usize = 60;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DiophError {
    #[error("continued fraction digits unreliable beyond depth {depth}")]
    PrecisionExhausted { depth: usize },
    #[error("<n alpha> below float resolution at n = {n}")]
    DivisionNearZero { n: u64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}
