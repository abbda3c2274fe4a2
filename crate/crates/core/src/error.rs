use alloc::string::String;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian (deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("state is not normalized (norm² = {norm_sq})")]
    NotNormalized { norm_sq: f64 },

    #[error("mean spin vanishes; direction and Wineland parameter are undefined")]
    ZeroMeanSpin,

    #[error("mean spin is not along the z axis (transverse length {transverse:e})")]
    MeanSpinNotAlongZ { transverse: f64 },

    #[error("anisotropy {0} is not supported here")]
    UnsupportedAnisotropy(f64),

    #[error("square-root argument is negative ({0:e}); parameters lie past the phase boundary")]
    NegativeDiscriminant(f64),

    #[error("product space for N = {0} is too large for the brute-force oracle")]
    ProductSpaceTooLarge(usize),

    #[error("no eigenvector found in the requested parity sector")]
    EmptySector,

    #[error("maximum lies on the boundary of the scanned interval at {at}")]
    PeakAtBoundary { at: f64 },

    #[error("finite-difference estimate did not converge after {halvings} halvings")]
    NonConvergence { halvings: u32 },

    #[error("need at least {needed} points, got {got}")]
    InsufficientPoints { needed: usize, got: usize },

    #[error("log-log fit requires positive data, got ({x}, {y})")]
    NonPositiveInput { x: f64, y: f64 },
}

pub type Result<T> = core::result::Result<T, Error>;
