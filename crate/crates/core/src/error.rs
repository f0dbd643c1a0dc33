use thiserror::Error;

/// Errors reported by the enhancement and assessment operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The plane is not square or its side is not divisible by the pyramid factor.
    #[error("plane {width}x{height} must be square with side divisible by {required}")]
    NonSquareOrIndivisible {
        width: usize,
        height: usize,
        required: usize,
    },

    /// Plane dimensions are not divisible by the decimation factor.
    #[error("plane {width}x{height} is not divisible by factor {factor}")]
    IndivisibleDimensions {
        width: usize,
        height: usize,
        factor: usize,
    },

    /// A Gaussian surround scale must be strictly positive.
    #[error("sigma must be positive, got {0}")]
    InvalidSigma(f64),

    /// Two planes that must agree in size do not.
    #[error("dimension mismatch: {left_width}x{left_height} vs {right_width}x{right_height}")]
    DimensionMismatch {
        left_width: usize,
        left_height: usize,
        right_width: usize,
        right_height: usize,
    },

    /// Wavelet analysis requires even side lengths.
    #[error("plane {width}x{height} must have even sides for wavelet analysis")]
    OddDimensions { width: usize, height: usize },

    /// The wavelet family name is not recognised.
    #[error("unknown wavelet family {0:?} (expected \"haar\" or \"db2\")")]
    UnknownFamily(String),

    /// An all-zero plane has no defined energy percentages.
    #[error("all-zero plane has no defined wavelet energy split")]
    ZeroEnergyPlane,

    /// The configuration is inconsistent.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// The image geometry is not supported by the requested method.
    #[error("unsupported geometry {width}x{height}: {reason}")]
    UnsupportedGeometry {
        width: usize,
        height: usize,
        reason: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
