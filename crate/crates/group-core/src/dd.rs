//! Double-double arithmetic.
//!
//! A value is the unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`, giving
//! roughly 106 bits of significand. Only the operations the orbit and phase
//! kernels need are provided.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

pub const LN2: Dd = Dd { hi: std::f64::consts::LN_2, lo: 2.319_046_813_846_299_6e-17 };
pub const PI: Dd = Dd { hi: std::f64::consts::PI, lo: 1.224_646_799_147_353_2e-16 };

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub const fn new(hi: f64) -> Dd {
        Dd { hi, lo: 0.0 }
    }

    #[inline]
    pub fn from_parts(hi: f64, lo: f64) -> Dd {
        let (h, l) = two_sum(hi, lo);
        Dd { hi: h, lo: l }
    }

    /// Exact for `|n| < 2^106`.
    pub fn from_i128(n: i128) -> Dd {
        let hi = n as f64;
        let lo = (n - hi as i128) as f64;
        Dd::from_parts(hi, lo)
    }

    /// Exact product of two doubles.
    #[inline]
    pub fn mul_f64_exact(a: f64, b: f64) -> Dd {
        let (p, e) = two_prod(a, b);
        Dd { hi: p, lo: e }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    #[inline]
    pub fn is_negative(self) -> bool {
        self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0)
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let e = e + self.lo * b;
        let (h, l) = quick_two_sum(p, e);
        Dd { hi: h, lo: l }
    }

    #[inline]
    pub fn add_f64(self, b: f64) -> Dd {
        let (s, e) = two_sum(self.hi, b);
        let e = e + self.lo;
        let (h, l) = quick_two_sum(s, e);
        Dd { hi: h, lo: l }
    }

    #[inline]
    pub fn sqr(self) -> Dd {
        self * self
    }

    pub fn floor(self) -> Dd {
        let h = self.hi.floor();
        if h == self.hi {
            let l = self.lo.floor();
            let (h, l) = quick_two_sum(h, l);
            Dd { hi: h, lo: l }
        } else {
            Dd { hi: h, lo: 0.0 }
        }
    }

    /// Nearest integer, ties away from zero on the leading part.
    pub fn round(self) -> Dd {
        (self + Dd::new(0.5)).floor()
    }

    /// Fractional part in `[0, 1)`.
    pub fn frac(self) -> Dd {
        let f = self - self.floor();
        if f.hi >= 1.0 {
            f - Dd::ONE
        } else if f.is_negative() {
            f + Dd::ONE
        } else {
            f
        }
    }

    /// Representative of `self mod 1` in `[-1/2, 1/2)`, rounded to a double.
    #[inline]
    pub fn centered_frac_f64(self) -> f64 {
        let f = self.frac().to_f64();
        if f >= 0.5 {
            f - 1.0
        } else {
            f
        }
    }

    pub fn sqrt(self) -> Dd {
        if self.hi <= 0.0 {
            return Dd::ZERO;
        }
        let x = self.hi.sqrt();
        let (p, e) = two_prod(x, x);
        let r = ((self.hi - p) - e + self.lo) / (2.0 * x);
        Dd::from_parts(x, r)
    }

    pub fn recip(self) -> Dd {
        Dd::ONE / self
    }

    /// `e^self`, relative error near `1e-30` for moderate arguments.
    pub fn exp(self) -> Dd {
        if self.hi > 709.0 {
            return Dd::new(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Dd::ZERO;
        }
        let k = (self.hi / LN2.hi).round();
        let r = self - LN2.mul_f64(k);
        // Halve ten times, run Taylor, square back.
        let r = r.mul_f64(1.0 / 1024.0);
        let mut term = r;
        let mut sum = r;
        for i in 2..=14 {
            term = term * r / Dd::new(i as f64);
            sum = sum + term;
            if term.hi.abs() < 1e-34 {
                break;
            }
        }
        // sum = e^r - 1; (1+s)^2 - 1 = s(2+s)
        for _ in 0..10 {
            sum = sum * (sum + Dd::new(2.0));
        }
        let v = sum + Dd::ONE;
        let scale = 2f64.powi(k as i32);
        Dd { hi: v.hi * scale, lo: v.lo * scale }
    }

    /// Natural logarithm of a positive value.
    pub fn ln(self) -> Dd {
        if self.hi <= 0.0 {
            return Dd::new(f64::NAN);
        }
        let mut y = Dd::new(self.hi.ln());
        for _ in 0..2 {
            y = y + self * (-y).exp() - Dd::ONE;
        }
        y
    }

    /// `self^p` for positive `self`.
    pub fn powf(self, p: Dd) -> Dd {
        (self.ln() * p).exp()
    }

    /// Parse a plain decimal literal such as `-12.5e-3` or `1.4142135623730950488`.
    pub fn parse_decimal(s: &str) -> Option<Dd> {
        let s = s.trim();
        let (neg, body) = match s.as_bytes().first()? {
            b'-' => (true, &s[1..]),
            b'+' => (false, &s[1..]),
            _ => (false, s),
        };
        let (mant, exp) = match body.find(['e', 'E']) {
            Some(i) => (&body[..i], body[i + 1..].parse::<i32>().ok()?),
            None => (body, 0),
        };
        let (int_part, frac_part) = match mant.find('.') {
            Some(i) => (&mant[..i], &mant[i + 1..]),
            None => (mant, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
            return None;
        }
        // Accumulate digits in chunks of 15 to stay exact per step.
        let digits: Vec<u8> = int_part.bytes().chain(frac_part.bytes()).map(|b| b - b'0').collect();
        let mut acc = Dd::ZERO;
        for chunk in digits.chunks(15) {
            let mut v: u64 = 0;
            for &d in chunk {
                v = v * 10 + d as u64;
            }
            acc = acc.mul_f64(10f64.powi(chunk.len() as i32)) + Dd::new(v as f64);
        }
        let scale = exp - frac_part.len() as i32;
        let acc = if scale >= 0 { acc * pow10(scale) } else { acc / pow10(-scale) };
        Some(if neg { -acc } else { acc })
    }
}

fn pow10(e: i32) -> Dd {
    let mut r = Dd::ONE;
    let mut base = Dd::new(10.0);
    let mut e = e as u32;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base;
        }
        base = base * base;
        e >>= 1;
    }
    r
}

impl From<f64> for Dd {
    fn from(x: f64) -> Dd {
        Dd::new(x)
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let e = e + t;
        let (s, e) = quick_two_sum(s, e);
        let e = e + f;
        let (h, l) = quick_two_sum(s, e);
        Dd { hi: h, lo: l }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (h, l) = quick_two_sum(p, e);
        Dd { hi: h, lo: l }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (h, l) = quick_two_sum(q1, q2);
        Dd { hi: h, lo: l }.add_f64(q3)
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi)? {
            Ordering::Equal => self.lo.partial_cmp(&other.lo),
            o => Some(o),
        }
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}{:+e}", self.hi, self.lo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt2_squares_back() {
        let r = Dd::new(2.0).sqrt();
        let e = r * r - Dd::new(2.0);
        assert!(e.to_f64().abs() < 1e-30);
    }

    #[test]
    fn exp_ln_roundtrip() {
        for &x in &[1e-3, 0.5, 1.0, 2.0, 17.3, 1e6, 4.0e6] {
            let d = Dd::new(x);
            let back = d.ln().exp();
            let rel = ((back - d) / d).to_f64().abs();
            assert!(rel < 1e-29, "x={x} rel={rel}");
        }
        let e = Dd::ONE.exp();
        assert!((e.hi - std::f64::consts::E).abs() < 1e-15);
        assert!((e - Dd::from_parts(std::f64::consts::E, 1.4456468917292502e-16)).to_f64().abs() < 1e-30);
    }

    #[test]
    fn parse_matches_division() {
        let tenth = Dd::parse_decimal("0.1").unwrap();
        let direct = Dd::ONE / Dd::new(10.0);
        assert!((tenth - direct).to_f64().abs() < 1e-32);
        let s2 = Dd::parse_decimal("1.41421356237309504880168872420969807856967").unwrap();
        assert!((s2 - Dd::new(2.0).sqrt()).to_f64().abs() < 1e-31);
        assert_eq!(Dd::parse_decimal("-2.5e2").unwrap().to_f64(), -250.0);
        assert!(Dd::parse_decimal("1.2.3").is_none());
        assert!(Dd::parse_decimal("").is_none());
    }

    #[test]
    fn frac_of_large_product() {
        // 3^40 * 0.5 has fractional part 1/2.
        let n = Dd::from_i128(3i128.pow(40));
        let f = n.mul_f64(0.5).frac();
        assert_eq!(f.to_f64(), 0.5);
        assert!(Dd::new(-0.25).frac().to_f64() == 0.75);
    }
}
