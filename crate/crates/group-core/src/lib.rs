//! Arithmetic in PSL(2,R) and on the modular surface PSL(2,Z)\H.
//!
//! Points of the quotient are right cosets `Gamma h`; the horocycle and
//! geodesic flows act by right multiplication. A point written `g Gamma`
//! corresponds to `Gamma g^{-1}` here.

pub mod bruhat;
pub mod dd;
pub mod element;
pub mod eta;
pub mod flow;
pub mod reduce;

pub use bruhat::{bruhat_decompose, Branch, BruhatFactors};
pub use dd::Dd;
pub use element::{GroupElement, HalfPlanePoint};
pub use eta::{eta_witness, injectivity_eta, EtaWitness};
pub use flow::{cusp_excursion, geodesic};
pub use reduce::{reduce_dd, reduce_psl2z, reduced_image, DdMat, Generator, LatticePoint};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GroupError {
    #[error("reduction did not terminate after {steps} generator applications")]
    ReductionStall { steps: usize },
    #[error("entry bound {bound} exceeds the enumeration limit")]
    EnumerationOverflow { bound: f64 },
}
