use thiserror::Error;

/// Errors reported by the library. Diagnostic values are carried as `f64`
/// regardless of the working scalar type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("photon number N must be a positive integer, got {0}")]
    InvalidPhotonNumber(u32),

    #[error("|{name}| = {value} exceeds N/2 = {limit}")]
    DiffOutOfRange {
        name: &'static str,
        value: f64,
        limit: f64,
    },

    #[error("2*{name} = {doubled} must have the same parity as N = {n}")]
    ParityMismatch {
        name: &'static str,
        doubled: i32,
        n: u32,
    },

    #[error("phase grid must be strictly increasing, finite, and within [-pi, pi]")]
    InvalidGrid,

    #[error("phase {phi} is at a cot(phi) singularity (multiple of pi)")]
    CotSingular { phi: f64 },

    #[error("phase {phi} is a removable-only singularity for m != m_psi")]
    SinSingular { phi: f64 },

    #[error("phase {phi} lies outside the classical support")]
    OutsideSupport { phi: f64 },

    #[error("phase {phi} is within {margin} of a classical support endpoint")]
    TooCloseToTurningPoint { phi: f64, margin: f64 },

    #[error("non-realizable trace: max |Im| residual {residual} exceeds {tolerance}")]
    NonRealizable { residual: f64, tolerance: f64 },

    #[error("amplitude at phi = {phi} is below the singularity threshold")]
    SingularAmplitude { phi: f64 },

    #[error("superposition coefficients are not normalized: sum |c|^2 = {norm}")]
    NotNormalized { norm: f64 },

    #[error("grid too coarse near phi = {phi}: zeros closer than two grid cells")]
    GridTooCoarse { phi: f64 },

    #[error("bisection bracket [{lo}, {hi}] has no sign change")]
    NoBracket { lo: f64, hi: f64 },

    #[error("eigensolver failed to converge")]
    EigenNoConvergence,

    #[error("step size underflow at phi = {phi} during ODE integration")]
    StepSizeUnderflow { phi: f64 },

    #[error("adaptive quadrature failed to reach the requested tolerance")]
    QuadratureNoConvergence,

    #[error("integration span [{lo}, {hi}] must keep a margin of {margin} from 0 and +/-pi")]
    SpanTooCloseToSingularity { lo: f64, hi: f64, margin: f64 },

    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
