//! Closed horocycles on the modular surface: periodic points, their period
//! integrals, the Haar integral they approach, and the error budgets that
//! tie orbit sums to them.

mod approx;
mod budget;
mod haar;
mod periodic;
mod quadrature;
mod testfn;

pub use approx::{approx_periodic_sequence, ApproxLevel};
pub use budget::{error_budget_l45, error_budget_p23, orbit_divergence_bound, ErrorBudget};
pub use haar::{haar_integral, HAAR_NORMALIZATION};
pub use periodic::{make_periodic_point, PeriodicPoint};
pub use quadrature::{
    along_horocycle, horocycle_base, ordered_sum, period_integral, period_integral_translated, QuadratureEstimate,
    SUM_BLOCK,
};
pub use testfn::{TestFn, BUMP_CENTERS, BUMP_RADIUS};

use group_core::GroupError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OrbitError {
    #[error("gcd({p}, {q}) != 1")]
    NotReduced { p: String, q: String },
    #[error("no convergent among the first {depth} satisfies the approximation inequality")]
    NoApproximantFound { depth: usize },
    #[error("quadrature changed by {change:e} at {nodes} nodes")]
    QuadratureUnderResolved { change: f64, nodes: u64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}
