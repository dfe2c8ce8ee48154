use std::fmt;
use std::path::PathBuf;

use maxahp_core::ahp::{AhpError, SrError};
use maxahp_core::TropicalError;
use serde::Serialize;
use thiserror::Error;

use crate::scalar::ScalarError;

/// Machine-readable failure class shared by the CLI and the service.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorKind {
    /// Unreadable or structurally invalid input.
    Schema,
    /// Input parsed but a comparison matrix is not symmetrically reciprocal.
    SrViolation,
    /// Well-formed request the problem cannot satisfy.
    Infeasible,
    /// A numerical routine failed.
    Numeric,
}

impl ErrorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorKind::Schema => "schema",
            ErrorKind::SrViolation => "sr_violation",
            ErrorKind::Infeasible => "infeasible",
            ErrorKind::Numeric => "numeric",
        }
    }

    /// CLI exit status.
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Schema | ErrorKind::SrViolation => 1,
            ErrorKind::Infeasible => 2,
            ErrorKind::Numeric => 3,
        }
    }
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{context}: entry ({row}, {col}): {source}")]
    Entry {
        context: String,
        row: usize,
        col: usize,
        source: ScalarError,
    },
    #[error("{context}: {source}")]
    Scalar {
        context: String,
        source: ScalarError,
    },
    #[error("{0}")]
    Schema(String),
    #[error("{context}: {source}")]
    Sr { context: String, source: SrError },
    #[error("{0}")]
    Infeasible(String),
    #[error("CSV output failed: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Tropical(#[from] TropicalError),
    #[error(transparent)]
    Ahp(AhpError),
}

impl From<AhpError> for Error {
    fn from(e: AhpError) -> Self {
        match e {
            AhpError::Tropical(t) => Error::Tropical(t),
            other => Error::Ahp(other),
        }
    }
}

fn tropical_kind(e: &TropicalError) -> ErrorKind {
    match e {
        TropicalError::Empty
        | TropicalError::NotSquare { .. }
        | TropicalError::InvalidEntry { .. }
        | TropicalError::NotPositive { .. }
        | TropicalError::DimensionMismatch { .. } => ErrorKind::Schema,
        TropicalError::ZeroMatrix
        | TropicalError::ZeroSpectralRadius
        | TropicalError::NotIrreducible => ErrorKind::Infeasible,
        TropicalError::SpectralRadiusExceedsOne { .. }
        | TropicalError::TooLargeForEnumeration { .. } => ErrorKind::Numeric,
    }
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Read { .. }
            | Error::Write { .. }
            | Error::Csv(_)
            | Error::Json(_)
            | Error::Entry { .. }
            | Error::Scalar { .. }
            | Error::Schema(_) => ErrorKind::Schema,
            Error::Sr { .. } => ErrorKind::SrViolation,
            Error::Infeasible(_) => ErrorKind::Infeasible,
            Error::Tropical(t) => tropical_kind(t),
            Error::Ahp(a) => match a {
                AhpError::Tropical(t) => tropical_kind(t),
                AhpError::Sr(_) => ErrorKind::SrViolation,
                AhpError::MissingCriteria
                | AhpError::NoMatrices
                | AhpError::InvalidProblem(_)
                | AhpError::InfeasibleAlpha { .. } => ErrorKind::Schema,
                AhpError::AllZero => ErrorKind::Infeasible,
                AhpError::NoConvergence(_)
                | AhpError::SolverFailure
                | AhpError::EnumerationTooLarge { .. } => ErrorKind::Numeric,
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
