//! Error taxonomy shared across the crate.
//!
//! Errors split into two broad classes, mirrored by the CLI exit codes:
//! problems with the *request* (bad parameters, invalid density profiles,
//! out-of-domain coordinates — exit code 2) and problems encountered while
//! *computing* (accuracy not reached, inconsistent tails, numerical
//! breakdown — exit code 3).

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A coordinate fell outside the string interval [-a/2, a/2].
    #[error("coordinate {x} outside the string interval [-{half}, {half}]")]
    OutOfDomain { x: f64, half: f64 },

    /// A parameter value is outside its admissible range.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// A density profile failed validation (non-positive values, bad knots, ...).
    #[error("invalid density profile: {0}")]
    Profile(String),

    /// `green_plus` was called with arguments on the wrong side of the diagonal.
    #[error("ordered branch requires x >= y, got x = {x}, y = {y}")]
    Ordering { x: f64, y: f64 },

    /// A requested accuracy could not be certified; the message carries the
    /// best value and its estimated error.
    #[error("accuracy target not met: {0}")]
    Accuracy(String),

    /// The request exceeds a hard capability limit (order caps, grid sizes).
    #[error("capability exceeded: {0}")]
    Capability(String),

    /// Required input data is missing (e.g. an order absent from a table).
    #[error("missing data: {0}")]
    Data(String),

    /// A tail estimate is inconsistent with the sum rules (Z(q) <= tail),
    /// signalling bad asymptotic coefficients or a bad Z value.
    #[error("tail inconsistency: {0}")]
    TailInconsistency(String),

    /// Generic numerical failure (non-convergence, indefinite kernel, ...).
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// Malformed command line or config input.
    #[error("usage error: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Exit code used by the CLI: 2 for invalid requests, 3 for failures
    /// arising during an otherwise valid computation.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::OutOfDomain { .. }
            | Error::Parameter(_)
            | Error::Profile(_)
            | Error::Ordering { .. }
            | Error::Data(_)
            | Error::Usage(_) => 2,
            Error::Accuracy(_)
            | Error::Capability(_)
            | Error::TailInconsistency(_)
            | Error::Numerical(_)
            | Error::Io(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
