use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use group_core::Dd;

use crate::{DiophError, FLOAT_MAX_DEPTH};

#[derive(Clone, Debug, PartialEq)]
pub enum RealInput {
    Float(f64),
    Rational(BigRational),
    /// `(p + sqrt(d)) / q` with `d > 0` and `q != 0`.
    Surd {
        p: BigInt,
        d: BigInt,
        q: BigInt,
    },
    Digits(ContinuedFraction),
}

impl RealInput {
    pub fn sqrt(d: i64) -> RealInput {
        RealInput::Surd { p: BigInt::zero(), d: BigInt::from(d), q: BigInt::one() }
    }

    pub fn golden_ratio() -> RealInput {
        RealInput::Surd { p: BigInt::one(), d: BigInt::from(5), q: BigInt::from(2) }
    }

    pub fn rational(p: i64, q: i64) -> RealInput {
        RealInput::Rational(BigRational::new(p.into(), q.into()))
    }

    /// Value to double-double precision.
    pub fn to_dd(&self) -> Dd {
        match self {
            RealInput::Float(x) => Dd::new(*x),
            RealInput::Rational(r) => rational_to_dd(r),
            RealInput::Surd { p, d, q } => {
                let s = big_to_dd(d).sqrt();
                (big_to_dd(p) + s) / big_to_dd(q)
            }
            RealInput::Digits(cf) => cf.to_dd(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_dd().to_f64()
    }
}

/// `[a0; a1, a2, ...]`, possibly terminating.
#[derive(Clone, Debug, PartialEq)]
pub struct ContinuedFraction {
    pub a0: BigInt,
    pub digits: Vec<BigInt>,
    /// True when the expansion is the complete expansion of a rational.
    pub terminated: bool,
}

impl ContinuedFraction {
    pub fn new(a0: i64, digits: &[i64]) -> ContinuedFraction {
        ContinuedFraction {
            a0: a0.into(),
            digits: digits.iter().map(|&d| BigInt::from(d)).collect(),
            terminated: false,
        }
    }

    pub fn depth(&self) -> usize {
        self.digits.len()
    }

    /// `a_k` with `a_0` at index 0.
    pub fn digit(&self, k: usize) -> Option<&BigInt> {
        if k == 0 {
            Some(&self.a0)
        } else {
            self.digits.get(k - 1)
        }
    }

    /// Value of the finite expansion.
    pub fn value(&self) -> BigRational {
        let mut acc: Option<BigRational> = None;
        for a in self.digits.iter().rev() {
            let v = BigRational::from_integer(a.clone());
            acc = Some(match acc {
                None => v,
                Some(t) => v + t.recip(),
            });
        }
        let head = BigRational::from_integer(self.a0.clone());
        match acc {
            None => head,
            Some(t) => head + t.recip(),
        }
    }

    pub fn to_dd(&self) -> Dd {
        // The first convergent within 1/(q_k q_{k+1}) < e^{-160} of the limit, else the last.
        // Convergents are already in lowest terms.
        let c = convergents(self);
        let pick = c
            .windows(2)
            .find(|w| ln_big(&w[0].q) + ln_big(&w[1].q) > 160.0)
            .map(|w| &w[0])
            .unwrap_or_else(|| c.last().expect("a0 always present"));
        rational_to_dd(&BigRational::new_raw(pick.p.clone(), pick.q.clone()))
    }

    /// `[0; a_{k+1}, a_{k+2}, ...]` as a double, `0` when no digits follow `a_k`.
    fn tail_after(&self, k: usize) -> f64 {
        let mut t = 0.0f64;
        for a in self.digits.iter().skip(k).rev() {
            let v = big_to_f64(a) + t;
            t = if v.is_finite() { 1.0 / v } else { 0.0 };
        }
        t
    }
}

/// A convergent `p/q` with the bound `|x - p/q| <= err_bound`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalApprox {
    pub p: BigInt,
    pub q: BigInt,
    /// May underflow to zero; `log_err_bound` stays finite.
    pub err_bound: f64,
    pub log_err_bound: f64,
}

pub fn cf_expand(x: &RealInput, depth: usize) -> Result<ContinuedFraction, DiophError> {
    let (cf, err) = expand_partial(x, depth);
    match err {
        Some(e) => Err(e),
        None => Ok(cf),
    }
}

/// Digits obtained before any precision failure, and the failure if one occurred.
fn expand_partial(x: &RealInput, depth: usize) -> (ContinuedFraction, Option<DiophError>) {
    match x {
        RealInput::Float(v) => expand_float(*v, depth),
        RealInput::Rational(r) => (expand_rational(r, depth), None),
        RealInput::Surd { p, d, q } => match expand_surd(p, d, q, depth) {
            Ok(cf) => (cf, None),
            Err(e) => (ContinuedFraction { a0: BigInt::zero(), digits: vec![], terminated: false }, Some(e)),
        },
        RealInput::Digits(cf) => {
            let mut out = cf.clone();
            if out.digits.len() > depth {
                out.digits.truncate(depth);
                out.terminated = false;
            }
            (out, None)
        }
    }
}

fn expand_rational(r: &BigRational, depth: usize) -> ContinuedFraction {
    let (mut n, mut d) = (r.numer().clone(), r.denom().clone());
    let (a0, rem) = n.div_mod_floor(&d);
    let mut digits = Vec::new();
    n = d;
    d = rem;
    while !d.is_zero() && digits.len() < depth {
        let (a, rem) = n.div_mod_floor(&d);
        digits.push(a);
        n = d;
        d = rem;
    }
    ContinuedFraction { a0, digits, terminated: d.is_zero() }
}

fn expand_surd(p: &BigInt, d: &BigInt, q: &BigInt, depth: usize) -> Result<ContinuedFraction, DiophError> {
    if !d.is_positive() || q.is_zero() {
        return Err(DiophError::InvalidInput("surd needs d > 0 and q != 0".into()));
    }
    let s = d.sqrt();
    if &(&s * &s) == d {
        return Ok(expand_rational(&BigRational::new(p + s, q.clone()), depth));
    }
    // Make q divide d - p^2 so the recurrence stays integral.
    let (mut m, dd, mut qq) = if (d - p * p).is_multiple_of(q) {
        (p.clone(), d.clone(), q.clone())
    } else {
        let aq = q.abs();
        (p * &aq, d * q * q, q * &aq)
    };
    let root = dd.sqrt();
    let floor_div = |m: &BigInt, qq: &BigInt| -> BigInt {
        let n = m + &root;
        if qq.is_positive() {
            n.div_floor(qq)
        } else {
            -(n.div_floor(&-qq)) - BigInt::one()
        }
    };
    let a0 = floor_div(&m, &qq);
    let mut a = a0.clone();
    let mut digits = Vec::with_capacity(depth);
    for _ in 0..depth {
        m = &a * &qq - &m;
        qq = (&dd - &m * &m) / &qq;
        a = floor_div(&m, &qq);
        digits.push(a.clone());
    }
    Ok(ContinuedFraction { a0, digits, terminated: false })
}

fn expand_float(x: f64, depth: usize) -> (ContinuedFraction, Option<DiophError>) {
    let mut digits = Vec::new();
    if !x.is_finite() {
        return (
            ContinuedFraction { a0: BigInt::zero(), digits, terminated: false },
            Some(DiophError::InvalidInput("non-finite input".into())),
        );
    }
    let a0f = x.floor();
    let a0 = BigInt::from(a0f as i64);
    let mut r = x - a0f;
    let mut err = f64::EPSILON * x.abs().max(f64::MIN_POSITIVE) / 2.0;
    let mut fail = None;
    while digits.len() < depth {
        if r == 0.0 {
            return (ContinuedFraction { a0, digits, terminated: true }, None);
        }
        if digits.len() >= FLOAT_MAX_DEPTH || r < 1e3 * err || 1.0 - r < 1e3 * err {
            fail = Some(DiophError::PrecisionExhausted { depth: digits.len() });
            break;
        }
        let xk = 1.0 / r;
        err = err / (r * r) * (1.0 + 4.0 * f64::EPSILON) + f64::EPSILON * xk;
        let a = xk.floor();
        digits.push(BigInt::from(a as i64));
        r = xk - a;
    }
    (ContinuedFraction { a0, digits, terminated: false }, fail)
}

pub fn convergents(cf: &ContinuedFraction) -> Vec<RationalApprox> {
    let n = cf.depth() + 1;
    let mut ps: Vec<BigInt> = Vec::with_capacity(n);
    let mut qs: Vec<BigInt> = Vec::with_capacity(n);
    let (mut p2, mut p1) = (BigInt::zero(), BigInt::one());
    let (mut q2, mut q1) = (BigInt::one(), BigInt::zero());
    for k in 0..n {
        let a = cf.digit(k).expect("k < n");
        let p = a * &p1 + &p2;
        let q = a * &q1 + &q2;
        p2 = std::mem::replace(&mut p1, p.clone());
        q2 = std::mem::replace(&mut q1, q.clone());
        ps.push(p);
        qs.push(q);
    }
    (0..n)
        .map(|k| {
            let lq = ln_big(&qs[k]);
            let log_err = if k + 1 < n {
                -(lq + ln_big(&qs[k + 1]))
            } else if cf.terminated {
                f64::NEG_INFINITY
            } else {
                -2.0 * lq
            };
            RationalApprox { p: ps[k].clone(), q: qs[k].clone(), err_bound: log_err.exp(), log_err_bound: log_err }
        })
        .collect()
}

/// `ln |x - p_k/q_k|` from the complete quotient, using the digits after level `k+1`.
///
/// When no digit beyond `a_{k+1}` is known the tail is taken as zero, giving
/// the upper bound `1/(q_k q_{k+1})` on the gap.
pub fn gap_log(cf: &ContinuedFraction, conv: &[RationalApprox], k: usize) -> Option<f64> {
    if k + 1 >= conv.len() {
        return None;
    }
    let lq = ln_big(&conv[k].q);
    let lq1 = ln_big(&conv[k + 1].q);
    let tail = cf.tail_after(k + 1);
    // alpha_{k+1} q_k + q_{k-1} = q_{k+1} + tail * q_k
    Some(-(lq + lq1 + (tail * (lq - lq1).exp()).ln_1p()))
}

pub fn dioph_type_estimate(x: &RealInput, depth: usize) -> Result<f64, DiophError> {
    let cf = cf_expand(x, depth + 1)?;
    if cf.terminated {
        return Err(DiophError::PrecisionExhausted { depth: cf.depth() });
    }
    let conv = convergents(&cf);
    let levels: Vec<(usize, f64)> = (0..conv.len().min(depth + 1))
        .filter(|&k| conv[k].q > BigInt::one())
        .filter_map(|k| gap_log(&cf, &conv, k).map(|g| (k, -g / ln_big(&conv[k].q))))
        .collect();
    if levels.is_empty() {
        return Err(DiophError::PrecisionExhausted { depth: cf.depth() });
    }
    let start = 3 * levels.len() / 4;
    Ok(levels[start..].iter().map(|&(_, m)| m).fold(f64::NEG_INFINITY, f64::max))
}

/// Depth-truncated certificate: a large digit proves `false`, bounded digits
/// up to `depth` give `true` only for the digits actually examined.
pub fn is_badly_approximable(x: &RealInput, depth: usize, bound: u64) -> Result<bool, DiophError> {
    let (cf, err) = expand_partial(x, depth);
    let bound = BigInt::from(bound);
    if cf.digits.iter().any(|d| d > &bound) {
        return Ok(false);
    }
    match err {
        Some(e) => Err(e),
        None => Ok(true),
    }
}

/// Natural log of a positive big integer, valid far beyond the f64 range.
pub fn ln_big(n: &BigInt) -> f64 {
    if n.sign() != Sign::Plus {
        return if n.is_zero() { f64::NEG_INFINITY } else { f64::NAN };
    }
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().expect("fits").ln();
    }
    let shift = bits - 64;
    let top: BigInt = n >> shift;
    top.to_f64().expect("64 bits").ln() + shift as f64 * std::f64::consts::LN_2
}

pub(crate) fn big_to_f64(n: &BigInt) -> f64 {
    n.to_f64().unwrap_or(if n.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

fn big_to_dd(n: &BigInt) -> Dd {
    rational_to_dd(&BigRational::from_integer(n.clone()))
}

pub(crate) fn rational_to_dd(r: &BigRational) -> Dd {
    let hi = r.to_f64().unwrap_or(0.0);
    if !hi.is_finite() || hi == 0.0 && !r.is_zero() {
        return Dd::new(hi);
    }
    let hr = BigRational::from_float(hi).expect("finite");
    let lo = (r - hr).to_f64().unwrap_or(0.0);
    Dd::from_parts(hi, lo)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(cf: &ContinuedFraction) -> (i64, Vec<i64>) {
        (cf.a0.to_i64().unwrap(), cf.digits.iter().map(|d| d.to_i64().unwrap()).collect())
    }

    #[test]
    fn sqrt2_digits() {
        let cf = cf_expand(&RealInput::sqrt(2), 20).unwrap();
        assert_eq!(small(&cf), (1, vec![2; 20]));
        let f = cf_expand(&RealInput::Float(2f64.sqrt()), 15).unwrap();
        assert_eq!(small(&f), (1, vec![2; 15]));
    }

    #[test]
    fn golden_digits() {
        let cf = cf_expand(&RealInput::golden_ratio(), 30).unwrap();
        assert_eq!(small(&cf), (1, vec![1; 30]));
    }

    #[test]
    fn rational_digits() {
        let cf = cf_expand(&RealInput::rational(415, 93), 10).unwrap();
        assert_eq!(small(&cf), (4, vec![2, 6, 7]));
        assert!(cf.terminated);
        assert_eq!(cf.value(), BigRational::new(415.into(), 93.into()));
        let neg = cf_expand(&RealInput::rational(-7, 3), 10).unwrap();
        assert_eq!(small(&neg), (-3, vec![1, 2]));
    }

    #[test]
    fn float_precision_wall() {
        let r = cf_expand(&RealInput::Float(2f64.sqrt()), 40);
        assert!(matches!(r, Err(DiophError::PrecisionExhausted { .. })));
        let half = cf_expand(&RealInput::Float(0.5), 10).unwrap();
        assert!(half.terminated);
        assert!(matches!(cf_expand(&RealInput::Float(0.3), 61), Err(DiophError::PrecisionExhausted { .. })));
    }

    #[test]
    fn surd_with_awkward_denominator() {
        // (1 + sqrt 3)/2 = [1; 2, 1, 2, 1, ...]
        let x = RealInput::Surd { p: 1.into(), d: 3.into(), q: 2.into() };
        let cf = cf_expand(&x, 6).unwrap();
        assert_eq!(small(&cf), (1, vec![2, 1, 2, 1, 2, 1]));
        let y = RealInput::Surd { p: 1.into(), d: 2.into(), q: (-1).into() };
        let cf = cf_expand(&y, 12).unwrap();
        let v = -1.0 - 2f64.sqrt();
        assert_eq!(cf.a0.to_i64().unwrap(), v.floor() as i64);
        assert!((cf.to_dd().to_f64() - v).abs() < 1e-8);
    }

    #[test]
    fn fibonacci_convergents() {
        let c = convergents(&ContinuedFraction::new(1, &[1, 1, 1, 1]));
        let pq: Vec<(i64, i64)> = c.iter().map(|r| (r.p.to_i64().unwrap(), r.q.to_i64().unwrap())).collect();
        assert_eq!(pq, vec![(1, 1), (2, 1), (3, 2), (5, 3), (8, 5)]);
    }

    #[test]
    fn silver_convergents() {
        let c = convergents(&ContinuedFraction::new(0, &[2, 2, 2]));
        let pq: Vec<(i64, i64)> = c.iter().map(|r| (r.p.to_i64().unwrap(), r.q.to_i64().unwrap())).collect();
        assert_eq!(pq, vec![(0, 1), (1, 2), (2, 5), (5, 12)]);
    }

    #[test]
    fn type_estimates() {
        let g = dioph_type_estimate(&RealInput::golden_ratio(), 30).unwrap();
        assert!((2.0..=2.1).contains(&g), "{g}");
        let s = dioph_type_estimate(&RealInput::sqrt(2), 30).unwrap();
        assert!((2.0..=2.1).contains(&s), "{s}");
        assert!(matches!(
            dioph_type_estimate(&RealInput::rational(3, 7), 30),
            Err(DiophError::PrecisionExhausted { .. })
        ));
    }

    #[test]
    fn gap_matches_exact_difference() {
        let x = RealInput::sqrt(7);
        let cf = cf_expand(&x, 40).unwrap();
        let conv = convergents(&cf);
        let v = x.to_dd();
        for k in 0..8 {
            let approx = rational_to_dd(&BigRational::new(conv[k].p.clone(), conv[k].q.clone()));
            let direct = (v - approx).abs().to_f64().ln();
            let g = gap_log(&cf, &conv, k).unwrap();
            assert!((g - direct).abs() < 1e-9, "level {k}: {g} vs {direct}");
        }
    }

    #[test]
    fn badly_approximable() {
        assert!(is_badly_approximable(&RealInput::sqrt(2), 40, 2).unwrap());
        assert!(is_badly_approximable(&RealInput::golden_ratio(), 40, 1).unwrap());
        let e_minus_2 = RealInput::Float(std::f64::consts::E - 2.0);
        assert!(!is_badly_approximable(&e_minus_2, 20, 3).unwrap());
    }

    #[test]
    fn e_digits_from_series() {
        // e - 2 = sum_{n>=2} 1/n!, exact to 30 terms.
        let mut sum = BigRational::zero();
        let mut fact = BigInt::one();
        for n in 2..32u32 {
            fact *= n;
            sum += BigRational::new(BigInt::one(), fact.clone());
        }
        let cf = cf_expand(&RealInput::Rational(sum), 12).unwrap();
        assert_eq!(small(&cf), (0, vec![1, 2, 1, 1, 4, 1, 1, 6, 1, 1, 8, 1]));
    }

    #[test]
    fn ln_of_huge_integers() {
        let n = BigInt::from(3).pow(5000);
        assert!((ln_big(&n) - 5000.0 * 3f64.ln()).abs() < 1e-9);
    }
}
