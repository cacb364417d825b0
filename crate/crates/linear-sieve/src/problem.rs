use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use sparse_sequences::{primes_below, rough_numbers};

use crate::SieveError;

/// Cap on the number of squarefree divisors any enumeration may visit.
pub const MAX_DIVISORS: u64 = 100_000_000;

/// Nonnegative weights `a(n)` on `1..=len`.
#[derive(Clone, Debug, PartialEq)]
pub enum Weights {
    /// `a(n) = 1` for `n <= N`.
    Uniform(u64),
    /// `a(n) = v[n - 1]`.
    Real(Vec<f64>),
    /// `a(n) = v[n - 1]`, summed exactly.
    Rational(Vec<BigRational>),
}

impl Weights {
    pub fn len(&self) -> u64 {
        match self {
            Weights::Uniform(n) => *n,
            Weights::Real(v) => v.len() as u64,
            Weights::Rational(v) => v.len() as u64,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn real(&self, n: u64) -> f64 {
        match self {
            Weights::Uniform(_) => 1.0,
            Weights::Real(v) => v[n as usize - 1],
            Weights::Rational(v) => v[n as usize - 1].to_f64().unwrap_or(f64::NAN),
        }
    }

    fn exact(&self, n: u64) -> Option<BigRational> {
        match self {
            Weights::Uniform(_) => Some(BigRational::from_integer(1.into())),
            Weights::Real(_) => None,
            Weights::Rational(v) => Some(v[n as usize - 1].clone()),
        }
    }
}

/// Neumaier-compensated sum in index order.
fn compensated(it: impl Iterator<Item = f64>) -> f64 {
    let (mut s, mut c) = (0.0f64, 0.0f64);
    for x in it {
        let t = s + x;
        c += if s.abs() >= x.abs() { (s - t) + x } else { (x - t) + s };
        s = t;
    }
    s + c
}

/// Sifting data: weights `a`, sifting range `z`, level `D`, exceptional modulus `Q`
/// and the slack `eps` of the bound.
#[derive(Clone, Debug, PartialEq)]
pub struct SieveProblem {
    pub weights: Weights,
    pub z: f64,
    pub level: f64,
    pub q: u64,
    pub eps: f64,
    primes: Vec<u64>,
}

impl SieveProblem {
    pub fn new(weights: Weights, z: f64, level: f64, eps: f64) -> Result<SieveProblem, SieveError> {
        if !(z >= 2.0) || !(level >= z) || !level.is_finite() {
            return Err(SieveError::InvalidProblem(format!("need 2 <= z <= D, got z = {z}, D = {level}")));
        }
        if !(eps > 0.0 && eps < 1.0 / 200.0) {
            return Err(SieveError::InvalidProblem(format!("eps = {eps} outside (0, 1/200)")));
        }
        let bad = match &weights {
            Weights::Uniform(_) => false,
            Weights::Real(v) => v.iter().any(|a| !(*a >= 0.0) || !a.is_finite()),
            Weights::Rational(v) => v.iter().any(|a| a < &BigRational::zero()),
        };
        if bad {
            return Err(SieveError::InvalidProblem("weights must be nonnegative".into()));
        }
        let primes = primes_below(z.ceil() as u64).into_iter().filter(|&p| (p as f64) < z).collect();
        Ok(SieveProblem { weights, z, level, q: 1, eps, primes })
    }

    /// Primes dividing `P(z)`.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// `s = log D / log z`.
    pub fn s(&self) -> f64 {
        self.level.ln() / self.z.ln()
    }

    /// `|A| = sum a(n)`.
    pub fn total(&self) -> f64 {
        match &self.weights {
            Weights::Uniform(n) => *n as f64,
            w => compensated((1..=w.len()).map(|n| w.real(n))),
        }
    }

    pub fn total_exact(&self) -> Option<BigRational> {
        self.a_d_exact(1)
    }

    /// `|A_d| = sum_{d | n} a(n)`.
    pub fn a_d(&self, d: u64) -> f64 {
        let w = &self.weights;
        match w {
            Weights::Uniform(n) => (n / d) as f64,
            _ => compensated((1..=w.len() / d).map(|m| w.real(m * d))),
        }
    }

    pub fn a_d_exact(&self, d: u64) -> Option<BigRational> {
        let w = &self.weights;
        match w {
            Weights::Uniform(n) => Some(BigRational::from_integer(BigInt::from(n / d))),
            Weights::Real(_) => None,
            Weights::Rational(_) => {
                let mut s = BigRational::zero();
                for m in 1..=w.len() / d {
                    s += w.exact(m * d)?;
                }
                Some(s)
            }
        }
    }

    fn check_divisor(&self, d: u64) -> Result<(), SieveError> {
        let mut rest = d;
        for &p in &self.primes {
            if rest % p == 0 {
                rest /= p;
                if rest % p == 0 {
                    break;
                }
            }
        }
        if d == 0 || rest != 1 {
            return Err(SieveError::NotSieveDivisor { d });
        }
        Ok(())
    }

    /// `r(d) = |A_d| - |A| / d`.
    pub fn remainder_r(&self, d: u64) -> Result<f64, SieveError> {
        self.check_divisor(d)?;
        Ok(match &self.weights {
            Weights::Uniform(n) => ((n % d) as f64) / -(d as f64),
            _ => self.a_d(d) - self.total() / d as f64,
        })
    }

    pub fn remainder_r_exact(&self, d: u64) -> Result<Option<BigRational>, SieveError> {
        self.check_divisor(d)?;
        Ok(self.a_d_exact(d).zip(self.total_exact()).map(|(ad, a)| ad - a / BigInt::from(d)))
    }

    /// `R = sum_{d | P(z), d < D Q} |r(d)|`.
    pub fn r_total(&self) -> Result<f64, SieveError> {
        let bound = self.level * self.q as f64;
        let mut terms = Vec::new();
        for_each_sieve_divisor(&self.primes, bound, |d, _| {
            let r = match &self.weights {
                Weights::Uniform(n) => (n % d) as f64 / d as f64,
                _ => (self.a_d(d) - self.total() / d as f64).abs(),
            };
            terms.push(r);
        })?;
        Ok(compensated(terms.into_iter()))
    }

    /// `S(A, P, z)` by scanning the `z`-rough part of the support.
    pub fn legendre_s(&self) -> f64 {
        let rough = rough_numbers(self.z, self.weights.len());
        match &self.weights {
            Weights::Uniform(_) => rough.len() as f64,
            w => compensated(rough.into_iter().map(|n| w.real(n))),
        }
    }

    pub fn legendre_s_exact(&self) -> Option<BigRational> {
        let rough = rough_numbers(self.z, self.weights.len());
        match &self.weights {
            Weights::Uniform(_) => Some(BigRational::from_integer(rough.len().into())),
            Weights::Real(_) => None,
            w => rough.into_iter().map(|n| w.exact(n)).sum(),
        }
    }

    /// `sum_{d | P(z)} mu(d) |A_d|`, exact when the weights are; divisors beyond the
    /// support contribute nothing and are pruned.
    pub fn legendre_s_inclusion_exclusion(&self) -> Result<BigRational, SieveError> {
        let len = self.weights.len();
        let mut acc = BigRational::zero();
        let mut int_acc: i128 = 0;
        let mut missing = false;
        for_each_sieve_divisor(&self.primes, len as f64 + 0.5, |d, mu| match &self.weights {
            Weights::Uniform(n) => int_acc += mu as i128 * (n / d) as i128,
            _ => match self.a_d_exact(d) {
                Some(ad) if mu > 0 => acc += ad,
                Some(ad) => acc -= ad,
                None => missing = true,
            },
        })?;
        if missing {
            return Err(SieveError::InvalidProblem("real weights have no exact inclusion-exclusion path".into()));
        }
        Ok(acc + BigRational::from_integer(int_acc.into()))
    }
}

/// Calls `visit(d, mu(d))` for every squarefree `d` composed of `primes` with `d <= bound`,
/// in depth-first order.
pub fn for_each_sieve_divisor<F: FnMut(u64, i8)>(primes: &[u64], bound: f64, mut visit: F) -> Result<u64, SieveError> {
    fn go<F: FnMut(u64, i8)>(
        primes: &[u64],
        start: usize,
        d: u64,
        mu: i8,
        bound: f64,
        count: &mut u64,
        visit: &mut F,
    ) -> Result<(), SieveError> {
        *count += 1;
        if *count > MAX_DIVISORS {
            return Err(SieveError::DivisorExplosion { limit: MAX_DIVISORS });
        }
        visit(d, mu);
        for i in start..primes.len() {
            let next = d as f64 * primes[i] as f64;
            if next > bound {
                break;
            }
            go(primes, i + 1, d * primes[i], -mu, bound, count, visit)?;
        }
        Ok(())
    }
    let mut count = 0;
    if bound >= 1.0 {
        go(primes, 0, 1, 1, bound, &mut count, &mut visit)?;
    }
    Ok(count)
}
