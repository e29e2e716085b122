//! MPS input and MIPLIB-style solution files.

mod mps;
mod solution;

use thiserror::Error;

use crate::model::ModelError;

pub use mps::{
    column_bounds, normalize, parse_document, parse_mps, row_intervals, BoundKind, MpsBound,
    MpsColumn, MpsDocument, MpsRow, RowRef, RowSense, MPS_INFINITY,
};
pub use solution::{read_solution, write_solution, SolutionFile};

#[derive(Debug, Error, PartialEq)]
pub enum MpsError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unsupported input{}: {what}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Unsupported { line: Option<usize>, what: String },
    #[error(transparent)]
    Model(ModelError),
}

impl MpsError {
    pub fn is_unsupported(&self) -> bool {
        matches!(self, MpsError::Unsupported { .. })
    }
}
