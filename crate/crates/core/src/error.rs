use thiserror::Error;

/// Errors produced by the construction, estimation and simulation routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} out of domain: {value}")]
    Domain { what: &'static str, value: f64 },

    #[error(
        "numerical integration did not converge at gamma = {gamma} (error estimate {error:e})"
    )]
    Convergence { gamma: f64, error: f64 },

    #[error("iteration for {what} did not converge at {value}")]
    NoConvergence { what: &'static str, value: f64 },

    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("log2 block length {n} exceeds the supported maximum of {max}")]
    BlockTooLong { n: u32, max: u32 },

    #[error("information set size {k} out of range for block length {len}")]
    InfoSizeOutOfRange { k: usize, len: usize },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("frozen position {0} carries a nonzero bit")]
    FrozenBitSet(usize),

    #[error(
        "target BLER {target} is not bracketed by [{lo_db}, {hi_db}] dB \
         (estimates {bler_lo} and {bler_hi})"
    )]
    NotBracketed {
        target: f64,
        lo_db: f64,
        hi_db: f64,
        bler_lo: f64,
        bler_hi: f64,
    },

    #[error("invalid construction: {0}")]
    InvalidConstruction(String),

    #[error("invalid simulation config: {0}")]
    InvalidConfig(&'static str),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
