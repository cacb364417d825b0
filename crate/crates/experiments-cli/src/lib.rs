//! Experiment drivers for horocycle orbits along sparse times on the modular
//! surface, and the `horolab` command line built on them.

pub mod config;
pub mod grids;
pub mod orbit;
pub mod probe;
pub mod report;
pub mod th11;
pub mod th12;
pub mod th13;

use config::{Experiment, ExperimentConfig};
use diophantine::DiophError;
use expsum::ExpSumError;
use group_core::GroupError;
use linear_sieve::SieveError;
use periodic_orbits::{OrbitError, TestFn, BUMP_CENTERS, BUMP_RADIUS};
use report::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_CLAMPED: i32 = 3;
pub const EXIT_CERTIFICATE: i32 = 4;
pub const EXIT_IO: i32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration: {0}")]
    Config(String),
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("numeric certificate failed: {0}")]
    Certificate(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("output: {0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Precondition(_) => EXIT_PRECONDITION,
            CliError::Certificate(_) => EXIT_CERTIFICATE,
            CliError::Io { .. } | CliError::Output(_) => EXIT_IO,
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> CliError {
        CliError::Certificate(e.to_string())
    }
}

impl From<OrbitError> for CliError {
    fn from(e: OrbitError) -> CliError {
        match e {
            OrbitError::QuadratureUnderResolved { .. } | OrbitError::Group(_) => CliError::Certificate(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<DiophError> for CliError {
    fn from(e: DiophError) -> CliError {
        match e {
            DiophError::InvalidInput(_) => CliError::Precondition(e.to_string()),
            _ => CliError::Certificate(e.to_string()),
        }
    }
}

impl From<SieveError> for CliError {
    fn from(e: SieveError) -> CliError {
        match e {
            SieveError::DivisorExplosion { .. } => CliError::Certificate(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<ExpSumError> for CliError {
    fn from(e: ExpSumError) -> CliError {
        match e {
            ExpSumError::InvalidInput(_) => CliError::Precondition(e.to_string()),
            _ => CliError::Certificate(e.to_string()),
        }
    }
}

/// `one`, `y>c`, `bump0`..`bump3`, or `bump(x,y,r)`.
pub fn parse_test_fn(s: &str) -> Result<TestFn, CliError> {
    let bad = || CliError::Config(format!("unknown test function {s:?}"));
    let t = s.trim();
    if t == "one" {
        return Ok(TestFn::One);
    }
    if let Some(c) = t.strip_prefix("y>") {
        let c = config::Real::new(c).f64()?;
        return (c >= 1.0).then_some(TestFn::YAbove(c)).ok_or_else(bad);
    }
    if let Some(i) = t.strip_prefix("bump").and_then(|r| r.parse::<usize>().ok()) {
        let &(x, y) = BUMP_CENTERS.get(i).ok_or_else(bad)?;
        return TestFn::bump(x, y, BUMP_RADIUS).ok_or_else(bad);
    }
    if let Some(inner) = t.strip_prefix("bump(").and_then(|r| r.strip_suffix(')')) {
        let v: Vec<f64> = inner.split(',').map(|p| config::Real::new(p).f64()).collect::<Result<_, _>>()?;
        if v.len() == 3 {
            return TestFn::bump(v[0], v[1], v[2])
                .ok_or_else(|| CliError::Precondition(format!("{s} leaves the fundamental domain")));
        }
    }
    Err(bad())
}

pub fn test_fns(cfg: &ExperimentConfig) -> Result<Vec<TestFn>, CliError> {
    match &cfg.test_functions {
        None => Ok(TestFn::standard_set()),
        Some(v) if v.is_empty() => Err(CliError::Config("empty test_functions".into())),
        Some(v) => v.iter().map(|s| parse_test_fn(s)).collect(),
    }
}

/// Runs `experiment`, after checking it agrees with the configuration.
pub fn run(experiment: Experiment, cfg: &ExperimentConfig) -> Result<Report, CliError> {
    if let Some(e) = cfg.experiment {
        if e != experiment {
            return Err(CliError::Config(format!("config is for {}, not {}", e.name(), experiment.name())));
        }
    }
    match experiment {
        Experiment::Th11 => th11::run_th11(cfg),
        Experiment::Th12 => th12::run_th12(cfg),
        Experiment::Th13 => th13::run_th13(cfg),
        Experiment::EffectiveProbe => probe::effective_probe(cfg),
        Experiment::ExpsumGrid => grids::expsum_grid(cfg),
        Experiment::SieveGrid => grids::sieve_grid(cfg),
        Experiment::Dioph => grids::dioph(cfg),
        Experiment::Period => grids::period(cfg),
    }
}

/// Exit status for a finished run.
pub fn exit_code(result: &Result<Report, CliError>) -> i32 {
    match result {
        Ok(r) if r.clamped => EXIT_CLAMPED,
        Ok(_) => EXIT_OK,
        Err(e) => e.exit_code(),
    }
}
