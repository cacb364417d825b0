//! Bruhat decomposition `G = U A U- ∪ ω A U-`.

use crate::element::GroupElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// `g = u0(s) a_t (1 0; y 1)`.
    UAUMinus,
    /// `g = ω a_t (1 0; y 1)`.
    OmegaAUMinus,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BruhatFactors {
    pub branch: Branch,
    pub s: f64,
    pub t: f64,
    pub y: f64,
}

const BRANCH_EPS: f64 = 1e-14;

pub fn bruhat_decompose(g: &GroupElement) -> BruhatFactors {
    if g.d.abs() > BRANCH_EPS {
        // Projective sign chosen so that d > 0.
        BruhatFactors { branch: Branch::UAUMinus, s: g.b / g.d, t: 2.0 * g.d.abs().ln(), y: g.c / g.d }
    } else {
        // d = 0 forces c != 0; the normalized representative has c > 0.
        let c = g.c.abs();
        let a = if g.c < 0.0 { -g.a } else { g.a };
        BruhatFactors { branch: Branch::OmegaAUMinus, s: 0.0, t: -2.0 * c.ln(), y: -a * c }
    }
}

impl BruhatFactors {
    pub fn recompose(&self) -> GroupElement {
        let tail = GroupElement::a_t(self.t).compose(&GroupElement::u_minus(self.y));
        match self.branch {
            Branch::UAUMinus => GroupElement::u0(self.s).compose(&tail),
            Branch::OmegaAUMinus => GroupElement::omega().compose(&tail),
        }
    }
}
