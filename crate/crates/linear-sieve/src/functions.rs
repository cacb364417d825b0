//! The linear-sieve pair `F` (upper) and `f` (lower) on `1 <= s <= 5`.

use crate::SieveError;

pub const S_MIN: f64 = 1.0;
pub const S_MAX: f64 = 5.0;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn two_e_gamma() -> f64 {
    2.0 * EULER_GAMMA.exp()
}

fn simpson(g: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    let n = 2000;
    let h = (b - a) / n as f64;
    let inner: f64 = (1..n).map(|i| g(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 }).sum();
    (g(a) + inner + g(b)) * h / 3.0
}

fn check(s: f64) -> Result<(), SieveError> {
    if (S_MIN..=S_MAX).contains(&s) {
        Ok(())
    } else {
        Err(SieveError::RangeUnsupported { s })
    }
}

fn upper(s: f64) -> f64 {
    if s <= 3.0 {
        two_e_gamma() / s
    } else {
        // (s F(s))' = f(s - 1)
        (two_e_gamma() + simpson(|t| lower(t - 1.0), 3.0, s)) / s
    }
}

fn lower(s: f64) -> f64 {
    if s <= 2.0 {
        0.0
    } else if s <= 4.0 {
        two_e_gamma() * (s - 1.0).ln() / s
    } else {
        // (s f(s))' = F(s - 1)
        (4.0 * lower(4.0) + simpson(|t| upper(t - 1.0), 4.0, s)) / s
    }
}

/// Upper sieve function `F(s)`.
pub fn sieve_f_upper(s: f64) -> Result<f64, SieveError> {
    check(s)?;
    Ok(upper(s))
}

/// Lower sieve function `f(s)`, zero on `s <= 2`.
pub fn sieve_f_lower(s: f64) -> Result<f64, SieveError> {
    check(s)?;
    Ok(lower(s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_values() {
        assert!((sieve_f_upper(2.0).unwrap() - EULER_GAMMA.exp()).abs() < 1e-15);
        assert!((sieve_f_upper(2.0).unwrap() - 1.7811).abs() < 1e-4);
        assert_eq!(sieve_f_lower(2.0).unwrap(), 0.0);
        assert!((sieve_f_lower(3.0).unwrap() - two_e_gamma() * 2f64.ln() / 3.0).abs() < 1e-15);
    }

    #[test]
    fn continuous_at_the_seams() {
        assert!((upper(3.0 + 1e-9) - upper(3.0)).abs() < 1e-8);
        assert!((lower(4.0 + 1e-9) - lower(4.0)).abs() < 1e-8);
    }

    #[test]
    fn ordered_and_tending_to_one() {
        let mut prev_gap = f64::INFINITY;
        for i in 0..=30 {
            let s = 2.0 + i as f64 * 0.1;
            let (up, lo) = (sieve_f_upper(s).unwrap(), sieve_f_lower(s).unwrap());
            assert!(lo < 1.0 && 1.0 < up, "s = {s}: {lo} {up}");
            assert!(up - lo < prev_gap);
            prev_gap = up - lo;
        }
    }

    #[test]
    fn out_of_range() {
        assert!(matches!(sieve_f_upper(0.5), Err(SieveError::RangeUnsupported { .. })));
        assert!(matches!(sieve_f_lower(5.5), Err(SieveError::RangeUnsupported { .. })));
    }
}
