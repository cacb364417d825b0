//! Oscillatory sums `sum e(phi(n))` evaluated with compensated, schedule-fixed reductions.

mod families;
mod fourier;
mod sum;

pub use families::{power_sum, power_sum_grid, quad_sum, quad_sum_grid, vdc_differenced, vdc_expanded, OscillatorySum};
pub use fourier::{
    fourier_decay_check, periodic_deficit_power, periodic_deficit_power_grid, progression_deficit, DecayReport,
    FourierPoly,
};
pub use sum::{exp_sum_indexed, raw_exp_sum, BLOCK};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExpSumError {
    #[error("<k c d / l> = {value:e} for frequency {k}: float-rational collision")]
    ResonanceDetected { k: i64, value: f64 },
    #[error("Fourier coefficient {k} moved by {change:e} under refinement")]
    QuadratureUnderResolved { k: i64, change: f64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
