use crate::SequenceError;

pub const MAX_FACTOR_INPUT: u64 = 1_000_000_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub n: u64,
    /// Prime factors with multiplicity, ascending.
    pub factors: Vec<u64>,
    pub omega_big: u32,
}

pub fn factorize(n: u64) -> Result<Factorization, SequenceError> {
    if n == 0 || n > MAX_FACTOR_INPUT {
        return Err(SequenceError::FactorizationTooLarge { n });
    }
    let mut m = n;
    let mut factors = Vec::new();
    while m % 2 == 0 {
        factors.push(2);
        m /= 2;
    }
    let mut d = 3u64;
    while d * d <= m {
        while m % d == 0 {
            factors.push(d);
            m /= d;
        }
        d += 2;
    }
    // What survives trial division up to its square root is prime.
    if m > 1 {
        factors.push(m);
    }
    let omega_big = factors.len() as u32;
    Ok(Factorization { n, factors, omega_big })
}
