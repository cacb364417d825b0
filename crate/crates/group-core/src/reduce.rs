//! Reduction modulo PSL(2,Z).
//!
//! Points of the quotient are right cosets `PSL(2,Z) h`. The base image of
//! `Gamma h` is `h . i`; reduction finds `gamma` with `gamma h . i` in the
//! standard fundamental domain by Lagrange reduction of the rows of `h`,
//! carried out in double-double arithmetic.

use crate::dd::Dd;
use crate::element::{GroupElement, HalfPlanePoint};
use crate::GroupError;

pub const MAX_REDUCTION_STEPS: usize = 1_000_000;

/// A 2x2 matrix with double-double entries, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DdMat {
    pub a: Dd,
    pub b: Dd,
    pub c: Dd,
    pub d: Dd,
}

impl DdMat {
    pub const IDENTITY: DdMat = DdMat { a: Dd::ONE, b: Dd::ZERO, c: Dd::ZERO, d: Dd::ONE };

    pub fn new(a: Dd, b: Dd, c: Dd, d: Dd) -> DdMat {
        DdMat { a, b, c, d }
    }

    pub fn mul(&self, h: &DdMat) -> DdMat {
        DdMat {
            a: self.a * h.a + self.b * h.c,
            b: self.a * h.b + self.b * h.d,
            c: self.c * h.a + self.d * h.c,
            d: self.c * h.b + self.d * h.d,
        }
    }

    pub fn det(&self) -> Dd {
        self.a * self.d - self.b * self.c
    }

    /// Adjugate, the inverse for determinant one.
    pub fn invert(&self) -> DdMat {
        DdMat { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// Right multiplication by `diag(e^{t/2}, e^{-t/2}) = a_{-t}`.
    pub fn mul_a_neg(&self, t: f64) -> DdMat {
        let half = Dd::new(t / 2.0);
        let up = half.exp();
        let down = (-half).exp();
        DdMat { a: self.a * up, b: self.b * down, c: self.c * up, d: self.d * down }
    }

    pub fn to_element(&self) -> GroupElement {
        GroupElement::normalized(self.a.to_f64(), self.b.to_f64(), self.c.to_f64(), self.d.to_f64())
    }

    /// `h . i = x + iy` with `x = (ac+bd)/(c^2+d^2)` and `y = 1/(c^2+d^2)`.
    pub fn image_of_i(&self) -> HalfPlanePoint {
        let n2 = self.c.sqr() + self.d.sqr();
        let x = (self.a * self.c + self.b * self.d) / n2;
        let y = self.det() / n2;
        HalfPlanePoint { x: x.to_f64(), y: y.to_f64() }
    }
}

impl From<&GroupElement> for DdMat {
    fn from(g: &GroupElement) -> DdMat {
        DdMat { a: Dd::new(g.a), b: Dd::new(g.b), c: Dd::new(g.c), d: Dd::new(g.d) }
    }
}

/// One reduction generator applied on the left.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    /// `T^n = (1 n; 0 1)`.
    T(i64),
    /// `S = (0 -1; 1 0)`.
    S,
}

impl Generator {
    pub fn matrix(&self) -> [[i128; 2]; 2] {
        match *self {
            Generator::T(n) => [[1, n as i128], [0, 1]],
            Generator::S => [[0, -1], [1, 0]],
        }
    }
}

/// A coset `Gamma g` with a reduced representative `reduced = gamma g`.
#[derive(Clone, Debug)]
pub struct LatticePoint {
    pub g: GroupElement,
    pub reduced: GroupElement,
    /// Generators in order of application; `gamma` is their product, last one leftmost.
    pub word: Vec<Generator>,
    rep: DdMat,
}

impl LatticePoint {
    pub fn identity() -> LatticePoint {
        reduce_dd(&DdMat::IDENTITY).expect("identity is reduced")
    }

    /// The reduced representative at full working precision.
    pub fn representative(&self) -> &DdMat {
        &self.rep
    }

    pub fn base_point(&self) -> HalfPlanePoint {
        self.rep.image_of_i()
    }

    /// `gamma` as an integer matrix, rebuilt from the word.
    pub fn gamma(&self) -> [[i128; 2]; 2] {
        let mut m = [[1i128, 0], [0, 1]];
        for gen in &self.word {
            let t = gen.matrix();
            m = [
                [t[0][0] * m[0][0] + t[0][1] * m[1][0], t[0][0] * m[0][1] + t[0][1] * m[1][1]],
                [t[1][0] * m[0][0] + t[1][1] * m[1][0], t[1][0] * m[0][1] + t[1][1] * m[1][1]],
            ];
        }
        m
    }

    /// Hyperbolic distance from `i` to the reduced base point.
    pub fn dist(&self) -> f64 {
        HalfPlanePoint::I.distance(&self.base_point())
    }
}

pub fn reduce_psl2z(g: &GroupElement) -> Result<LatticePoint, GroupError> {
    reduce_dd(&DdMat::from(g))
}

pub fn reduce_dd(m: &DdMat) -> Result<LatticePoint, GroupError> {
    let mut word = Vec::new();
    let rep = lagrange(m, Some(&mut word))?;
    Ok(LatticePoint { g: m.to_element(), reduced: rep.to_element(), word, rep })
}

/// Reduced base point only; the hot path of every orbit sum.
#[inline]
pub fn reduced_image(m: &DdMat) -> Result<HalfPlanePoint, GroupError> {
    Ok(lagrange(m, None)?.image_of_i())
}

fn lagrange(m: &DdMat, mut word: Option<&mut Vec<Generator>>) -> Result<DdMat, GroupError> {
    let (mut a, mut b, mut c, mut d) = (m.a, m.b, m.c, m.d);
    let mut steps = 0usize;
    loop {
        let n2 = c.sqr() + d.sqr();
        let x = (a * c + b * d) / n2;
        let n = x.round();
        if n.hi != 0.0 {
            a = a - c * n;
            b = b - d * n;
            steps += 1;
            if let Some(w) = word.as_deref_mut() {
                w.push(Generator::T(-(n.hi as i64) - n.lo as i64));
            }
        }
        let r2 = a.sqr() + b.sqr();
        if r2 < n2 {
            let (na, nb) = (-c, -d);
            c = a;
            d = b;
            a = na;
            b = nb;
            steps += 1;
            if let Some(w) = word.as_deref_mut() {
                w.push(Generator::S);
            }
        } else {
            break;
        }
        if steps > MAX_REDUCTION_STEPS {
            return Err(GroupError::ReductionStall { steps });
        }
    }
    let flip = c.is_negative() || (c.hi == 0.0 && a.is_negative());
    Ok(if flip { DdMat { a: -a, b: -b, c: -c, d: -d } } else { DdMat { a, b, c, d } })
}
