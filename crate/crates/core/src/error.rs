//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("parameter `{name}` must be strictly positive, got {value}")]
    NonPositiveParameter { name: &'static str, value: f64 },

    #[error("strong competition requires a > 1 and b > 1, got a = {a}, b = {b}")]
    NotStrongCompetition { a: f64, b: f64 },

    #[error("`{name}` = {value} outside the admissible range {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: String,
    },

    #[error("speed {speed} is below the minimal front speed {minimal}; no monotone front exists")]
    BelowMinimalSpeed { speed: f64, minimal: f64 },

    #[error(
        "Newton iteration did not converge within {iterations} iterations \
         (residual history tail: {history:?})"
    )]
    NewtonStalled {
        iterations: usize,
        history: Vec<f64>,
    },

    #[error("spurious front solution: {detail}")]
    SpuriousSolution { detail: String },

    #[error(
        "profile tails not settled on the solve interval \
         (worst boundary deviation {deviation:.3e} after {attempts} domain enlargements)"
    )]
    TailsUnsettled { deviation: f64, attempts: usize },

    #[error("no zero crossing within a horizon of {horizon} units; initial height below threshold")]
    NoZeroCrossing { horizon: f64 },

    #[error("time step {dt:.6e} exceeds the stability bound {bound:.6e}")]
    UnstableTimeStep { dt: f64, bound: f64 },

    #[error("state leaves the invariant box [0,1]: {field} = {value:.6e} at cell {index}")]
    BoxViolation {
        field: &'static str,
        value: f64,
        index: usize,
    },

    #[error("scenario configuration error: {0}")]
    ScenarioConfig(String),

    #[error(
        "front reached the monitoring shell: half-level set within 10 spacings of the outer \
         boundary at t = {time} (shell deviation {deviation:.3})"
    )]
    FrontContamination { time: f64, deviation: f64 },

    #[error("no invasion up to radius {rho_max}")]
    NoInvasion { rho_max: f64 },

    #[error("level {level} never attained by field `{field}` in any snapshot")]
    EmptyTrack { field: &'static str, level: f64 },

    #[error("need at least {needed} track samples in the fit window, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("zone `{zone}` contains no grid point at t = {time}")]
    ZoneCollapsed { zone: String, time: f64 },

    #[error("ramp construction failed verification after {attempts} horizon doublings")]
    RampConstruction { attempts: usize },

    #[error("profile tails too short to measure the transition half-width: {detail}")]
    ProfileTailsTooShort { detail: String },

    #[error("certificate scan inconclusive: {detail}")]
    InconclusiveCertificate { detail: String },

    #[error("certificate residual check failed: {detail}")]
    CertificateFailed { detail: String },

    #[error("exponential bound violated at t = {time}, cell {index}: field = {value:.6e} > bound = {bound:.6e}")]
    ExponentialBoundViolated {
        time: f64,
        index: usize,
        value: f64,
        bound: f64,
    },

    #[error("envelope membership routes disagree at {point:?}: by-speed {by_speed}, by-distance {by_distance}")]
    EnvelopeRouteMismatch {
        point: Vec<f64>,
        by_speed: bool,
        by_distance: bool,
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
