//! Crate-wide error type.
//!
//! Every fallible operation in the crate returns [`Result`]. The variants
//! distinguish bad input (caller error) from resource guards (the operation
//! was asked to do something that would not terminate in reasonable time or
//! would overflow), because the command-line layer maps them to different
//! exit codes.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Input contained NaN or infinite entries where finite values are required.
    #[error("non-finite entry in input: {0}")]
    NonFinite(&'static str),

    /// A basis failed the unimodularity check `|det - 1| <= tol`.
    #[error("basis is not unimodular: det = {det}")]
    NotUnimodular { det: f64 },

    /// A matrix that must be invertible was numerically singular.
    #[error("singular matrix in {0}")]
    Singular(&'static str),

    /// Point enumeration would visit more than the configured guard limit.
    #[error("enumeration guard tripped: more than {limit} points/nodes")]
    EnumerationGuard { limit: u64 },

    /// A flow or orbit computation produced entries beyond the overflow guard.
    #[error("overflow guard tripped: |entry| > {0:e}")]
    Overflow(f64),

    /// Parameter validation failed (dimensions, ranges, primality, rates...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The requested operation is defined but not supported for these inputs.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A continued-fraction computation was asked for more depth than available.
    #[error("insufficient depth: need at least {need} convergents, have {have}")]
    InsufficientDepth { need: usize, have: usize },

    /// A 2-D orbit has a horizontal lattice vector, so excursions terminate.
    #[error("periodic orbit: lattice contains the horizontal vector ({x}, 0)")]
    PeriodicOrbit { x: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors that signal a resource guard rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::EnumerationGuard { .. } | Error::Overflow(_)
        )
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
}
