//! File formats, request handlers and CSV reports around `maxahp-core`.
//!
//! Matrix entries are kept as text (`"1/7"`, `"0.25"`) so a document
//! survives a load/save cycle bit for bit.

pub mod api;
mod document;
mod error;
pub mod report;
mod scalar;

pub use document::{
    load_matrix_document, load_problem, load_problem_document, CriteriaDocument, Entry,
    MatrixDocument, ProblemDocument,
};
pub use error::{Error, ErrorKind, Result};
pub use scalar::{parse_scalar, ScalarError};
