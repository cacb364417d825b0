//! Elements of PSL(2,R) and the upper half plane.

use std::fmt;

/// A real 2x2 matrix of determinant one, stored with `c > 0`, or `c = 0` and `a > 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroupElement {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

/// A point `x + iy` with `y > 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfPlanePoint {
    pub x: f64,
    pub y: f64,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement { a: 1.0, b: 0.0, c: 0.0, d: 1.0 };

    /// Builds the sign-normalized element; entries are rescaled by `1/sqrt(det)`.
    ///
    /// Returns `None` when the determinant is not positive.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Option<GroupElement> {
        let det = det2(a, b, c, d);
        if !(det > 0.0) || !det.is_finite() {
            return None;
        }
        let s = if (det - 1.0).abs() < 1e-15 { 1.0 } else { 1.0 / det.sqrt() };
        Some(Self::normalized(a * s, b * s, c * s, d * s))
    }

    /// Sign normalization only; the caller guarantees `ad - bc = 1`.
    pub fn normalized(a: f64, b: f64, c: f64, d: f64) -> GroupElement {
        if c < 0.0 || (c == 0.0 && a < 0.0) {
            GroupElement { a: -a, b: -b, c: -c, d: -d }
        } else {
            GroupElement { a, b, c, d }
        }
    }

    /// `u0(s) = (1 s; 0 1)`.
    pub fn u0(s: f64) -> GroupElement {
        GroupElement { a: 1.0, b: s, c: 0.0, d: 1.0 }
    }

    /// `a_t = diag(e^{-t/2}, e^{t/2})`, so that `a_t . z = e^{-t} z`.
    pub fn a_t(t: f64) -> GroupElement {
        GroupElement { a: (-t / 2.0).exp(), b: 0.0, c: 0.0, d: (t / 2.0).exp() }
    }

    /// The Weyl element `(0 -1; 1 0)`.
    pub fn omega() -> GroupElement {
        GroupElement { a: 0.0, b: -1.0, c: 1.0, d: 0.0 }
    }

    /// `(1 0; y 1)`.
    pub fn u_minus(y: f64) -> GroupElement {
        Self::normalized(1.0, 0.0, y, 1.0)
    }

    pub fn det(&self) -> f64 {
        det2(self.a, self.b, self.c, self.d)
    }

    pub fn compose(&self, h: &GroupElement) -> GroupElement {
        let a = self.a * h.a + self.b * h.c;
        let b = self.a * h.b + self.b * h.d;
        let c = self.c * h.a + self.d * h.c;
        let d = self.c * h.b + self.d * h.d;
        // Rescaling by an ill-conditioned determinant would cost more than it saves.
        Self::normalized(a, b, c, d)
    }

    pub fn invert(&self) -> GroupElement {
        Self::normalized(self.d, -self.b, -self.c, self.a)
    }

    pub fn mobius_act(&self, z: HalfPlanePoint) -> HalfPlanePoint {
        // (az+b)/(cz+d) with Im = y/|cz+d|^2 for det 1.
        let nx = self.c * z.x + self.d;
        let ny = self.c * z.y;
        let den = nx * nx + ny * ny;
        let mx = self.a * z.x + self.b;
        let my = self.a * z.y;
        HalfPlanePoint { x: (mx * nx + my * ny) / den, y: z.y / den }
    }

    /// Largest entrywise difference after matching signs.
    pub fn distance_projective(&self, h: &GroupElement) -> f64 {
        let plus = (self.a - h.a).abs().max((self.b - h.b).abs()).max((self.c - h.c).abs()).max((self.d - h.d).abs());
        let minus = (self.a + h.a).abs().max((self.b + h.b).abs()).max((self.c + h.c).abs()).max((self.d + h.d).abs());
        plus.min(minus)
    }

    /// Frobenius norm of `self - I`, taking the better sign.
    pub fn frobenius_from_identity(&self) -> f64 {
        let f = |s: f64| {
            let (a, b, c, d) = (s * self.a - 1.0, s * self.b, s * self.c, s * self.d - 1.0);
            (a * a + b * b + c * c + d * d).sqrt()
        };
        f(1.0).min(f(-1.0))
    }

    pub fn image_of_i(&self) -> HalfPlanePoint {
        self.mobius_act(HalfPlanePoint::I)
    }
}

/// `ad - bc` with Kahan's fused correction.
fn det2(a: f64, b: f64, c: f64, d: f64) -> f64 {
    let w = b * c;
    let e = (-b).mul_add(c, w);
    a.mul_add(d, -w) + e
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}; {}, {})", self.a, self.b, self.c, self.d)
    }
}

impl HalfPlanePoint {
    pub const I: HalfPlanePoint = HalfPlanePoint { x: 0.0, y: 1.0 };

    pub fn new(x: f64, y: f64) -> Option<HalfPlanePoint> {
        (y > 0.0 && x.is_finite() && y.is_finite()).then_some(HalfPlanePoint { x, y })
    }

    /// Hyperbolic distance, via `cosh d = 1 + |z-w|^2 / (2 y_z y_w)`.
    pub fn distance(&self, w: &HalfPlanePoint) -> f64 {
        let dx = self.x - w.x;
        let dy = self.y - w.y;
        let r = (dx * dx + dy * dy).sqrt() / (2.0 * (self.y * w.y).sqrt());
        2.0 * r.asinh()
    }

    /// Membership in the closed standard fundamental domain, with slack `tol`.
    pub fn in_fundamental_domain(&self, tol: f64) -> bool {
        self.x.abs() <= 0.5 + tol && self.x * self.x + self.y * self.y >= 1.0 - tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(g: &GroupElement, h: &GroupElement, tol: f64) -> bool {
        g.distance_projective(h) < tol
    }

    #[test]
    fn unipotent_law() {
        let g = GroupElement::u0(1.5).compose(&GroupElement::u0(2.5));
        assert!(close(&g, &GroupElement::u0(4.0), 1e-15));
    }

    #[test]
    fn diagonal_conjugation() {
        let t = 4f64.ln();
        let at = GroupElement::a_t(t);
        let g = at.compose(&GroupElement::u0(1.0).compose(&at.invert()));
        assert!(close(&g, &GroupElement::u0(0.25), 1e-15));
    }

    #[test]
    fn adjugate_inverse() {
        let g = GroupElement::new(2.0, 1.0, 1.0, 1.0).unwrap();
        let inv = g.invert();
        assert!(close(&inv, &GroupElement::normalized(1.0, -1.0, -1.0, 2.0), 1e-15));
    }

    #[test]
    fn mobius_examples() {
        let z = GroupElement::omega().mobius_act(HalfPlanePoint::I);
        assert!((z.x).abs() < 1e-15 && (z.y - 1.0).abs() < 1e-15);
        let z = GroupElement::u0(1.0).mobius_act(HalfPlanePoint::I);
        assert_eq!((z.x, z.y), (1.0, 1.0));
        let z = GroupElement::a_t(4f64.ln()).mobius_act(HalfPlanePoint::I);
        assert!((z.x).abs() < 1e-15 && (z.y - 0.25).abs() < 1e-15);
    }

    #[test]
    fn sign_normalization() {
        let g = GroupElement::new(-1.0, 0.0, -2.0, -1.0).unwrap();
        assert!(g.c > 0.0);
        let h = GroupElement::new(-2.0, 3.0, 0.0, -0.5).unwrap();
        assert!(h.a > 0.0 && h.c == 0.0);
        assert!(GroupElement::new(1.0, 2.0, 3.0, 4.0).is_none());
    }

    #[test]
    fn omega_squared_is_identity() {
        let w = GroupElement::omega();
        assert!(close(&w.compose(&w), &GroupElement::IDENTITY, 1e-15));
    }

    #[test]
    fn distance_along_imaginary_axis() {
        let d = HalfPlanePoint::I.distance(&HalfPlanePoint { x: 0.0, y: 3f64.exp() });
        assert!((d - 3.0).abs() < 1e-13);
    }
}
