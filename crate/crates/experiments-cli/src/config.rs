//! Experiment configuration. Every real is a string so that configurations
//! parse identically on every platform.
//!
//! A real is one of: a decimal such as `"0.05"` or `"1e-6"` (taken as the exact
//! rational it spells), `"sqrt(d)"`, `"golden"`, or `"surd(p,d,q)"` for `(p + sqrt d)/q`.

use std::path::Path;

use diophantine::RealInput;
use group_core::Dd;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Experiment {
    Th11,
    Th12,
    Th13,
    #[serde(alias = "probe")]
    EffectiveProbe,
    #[serde(alias = "expsum")]
    ExpsumGrid,
    #[serde(alias = "sieve")]
    SieveGrid,
    Dioph,
    Period,
}

impl Experiment {
    pub fn name(&self) -> &'static str {
        match self {
            Experiment::Th11 => "th11",
            Experiment::Th12 => "th12",
            Experiment::Th13 => "th13",
            Experiment::EffectiveProbe => "probe",
            Experiment::ExpsumGrid => "expsum",
            Experiment::SieveGrid => "sieve",
            Experiment::Dioph => "dioph",
            Experiment::Period => "period",
        }
    }
}

/// A real written as a string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Real(pub String);

impl Real {
    pub fn new(s: &str) -> Real {
        Real(s.to_string())
    }

    pub fn exact(&self) -> Result<RealInput, CliError> {
        parse_real(&self.0).ok_or_else(|| CliError::Config(format!("cannot parse real {:?}", self.0)))
    }

    pub fn dd(&self) -> Result<Dd, CliError> {
        Ok(self.exact()?.to_dd())
    }

    pub fn f64(&self) -> Result<f64, CliError> {
        Ok(self.dd()?.to_f64())
    }
}

fn parse_int(s: &str) -> Option<BigInt> {
    s.trim().parse().ok()
}

fn parse_decimal_exact(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    let digits = format!("{int_part}{frac_part}");
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mut num: BigInt = digits.parse().ok()?;
    if neg {
        num = -num;
    }
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let r = if scale >= 0 {
        BigRational::from_integer(num * Pow::pow(&ten, scale as u32))
    } else {
        BigRational::new(num, Pow::pow(&ten, (-scale) as u32))
    };
    Some(r)
}

pub fn parse_real(s: &str) -> Option<RealInput> {
    let t = s.trim();
    if t == "golden" {
        return Some(RealInput::golden_ratio());
    }
    if let Some(inner) = t.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
        let d = parse_int(inner)?;
        return (d > BigInt::from(0)).then(|| RealInput::Surd { p: 0.into(), d, q: BigInt::one() });
    }
    if let Some(inner) = t.strip_prefix("surd(").and_then(|r| r.strip_suffix(')')) {
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 3 {
            return None;
        }
        let (p, d, q) = (parse_int(parts[0])?, parse_int(parts[1])?, parse_int(parts[2])?);
        return (d > BigInt::from(0) && q != BigInt::from(0)).then_some(RealInput::Surd { p, d, q });
    }
    parse_decimal_exact(t).map(RealInput::Rational)
}

/// Digits `[a0; a1, ..., am]` extended by `a_{k+1} = q_k^{mu-2}` for `extra` steps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstructSpec {
    pub prefix: Vec<i64>,
    pub mu: u32,
    pub extra: usize,
}

impl ConstructSpec {
    /// The type-100 number started from `[0; 1]`.
    pub fn default_100() -> ConstructSpec {
        ConstructSpec { prefix: vec![0, 1], mu: 100, extra: 3 }
    }

    /// The type-100 number started from the first eight digits of `sqrt 2 - 1`.
    pub fn pell_100() -> ConstructSpec {
        ConstructSpec { prefix: vec![0, 2, 2, 2, 2, 2, 2, 2, 2], mu: 100, extra: 3 }
    }
}

/// Initial point `(1 0; x 1) Gamma`, optionally given instead as a general element
/// `g` (reduced to that form by its Bruhat factors), plus the Bruhat shift `s`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Real>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construct: Option<ConstructSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<[Real; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Real>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub experiment: Option<Experiment>,
    #[serde(default)]
    pub point: PointSpec,
    /// Further points for experiments that compare several.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<PointSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Real>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Real>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<Real>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<Real>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Real>,
    /// Sifting exponent: `z = N^{z_exponent}`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z_exponent: Option<Real>,
    /// Sieve level: `D = z^{level}`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<Real>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_n: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_grid: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<(i64, i64)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub test_functions: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cells: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cf_depth: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub random_points: Option<usize>,
    #[serde(default)]
    pub seed: u64,
}

pub const DEFAULT_MAX_N: u64 = 10_000_000;

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<ExperimentConfig, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<ExperimentConfig, CliError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.display().to_string(), source: e })?;
        Self::from_json(&text)
    }

    pub fn max_n(&self) -> u64 {
        self.max_n.unwrap_or(DEFAULT_MAX_N)
    }

    pub fn real_or(&self, field: &Option<Real>, default: &str) -> Result<Real, CliError> {
        Ok(field.clone().unwrap_or_else(|| Real::new(default)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_strings_are_exact() {
        let r = parse_real("0.05").unwrap();
        assert_eq!(r, RealInput::rational(1, 20));
        assert_eq!(parse_real("-1.5e-3").unwrap(), RealInput::rational(-3, 2000));
        assert_eq!(parse_real("12").unwrap(), RealInput::rational(12, 1));
        assert!(parse_real("1.2.3").is_none());
        assert!(parse_real("").is_none());
    }

    #[test]
    fn surds() {
        assert_eq!(parse_real("sqrt(2)").unwrap(), RealInput::sqrt(2));
        assert_eq!(parse_real("golden").unwrap(), RealInput::golden_ratio());
        let x = parse_real("surd(-1,2,1)").unwrap();
        assert!((x.to_f64() - (std::f64::consts::SQRT_2 - 1.0)).abs() < 3e-16);
        assert!(parse_real("sqrt(-2)").is_none());
    }

    #[test]
    fn config_roundtrip() {
        let text = r#"{"experiment":"th11","point":{"construct":{"prefix":[0,1],"mu":100,"extra":3}},"gamma":"0.05","max_n":1000}"#;
        let c = ExperimentConfig::from_json(text).unwrap();
        assert_eq!(c.experiment, Some(Experiment::Th11));
        let back = ExperimentConfig::from_json(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(back, c);
        assert!(ExperimentConfig::from_json(r#"{"gama":"0.1"}"#).is_err());
    }
}
