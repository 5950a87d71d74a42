//! JSON matrix documents: `{"rows": r, "cols": c, "data": [[re, im], ...]}`, row-major.

use std::path::Path;

use opeq_core::linalg::C64;
use opeq_core::{ComplexMatrix, OpError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
}

#[derive(Debug, Error)]
pub enum MatrixFileError {
    #[error("{origin}: {source}")]
    Io {
        origin: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{origin}:{line}:{column}: {message}")]
    Syntax {
        origin: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{origin}: data has {found} entries, expected rows × cols = {expected}")]
    Length {
        origin: String,
        expected: usize,
        found: usize,
    },
    #[error("{origin}: {source}")]
    Invalid {
        origin: String,
        #[source]
        source: OpError,
    },
}

impl From<&ComplexMatrix> for MatrixFile {
    fn from(m: &ComplexMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data: m.data().iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl MatrixFile {
    pub fn to_matrix(&self, origin: &str) -> Result<ComplexMatrix, MatrixFileError> {
        let expected = self.rows * self.cols;
        if self.data.len() != expected {
            return Err(MatrixFileError::Length {
                origin: origin.to_string(),
                expected,
                found: self.data.len(),
            });
        }
        let entries = self.data.iter().map(|&[re, im]| C64::new(re, im)).collect();
        ComplexMatrix::new(self.rows, self.cols, entries).map_err(|source| MatrixFileError::Invalid {
            origin: origin.to_string(),
            source,
        })
    }
}

/// Parses a document; `origin` names the source in error messages.
pub fn parse_matrix(text: &str, origin: &str) -> Result<ComplexMatrix, MatrixFileError> {
    let doc: MatrixFile = serde_json::from_str(text).map_err(|e| MatrixFileError::Syntax {
        origin: origin.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    doc.to_matrix(origin)
}

pub fn read_matrix(path: &Path) -> Result<(ComplexMatrix, Vec<u8>), MatrixFileError> {
    let origin = path.display().to_string();
    let bytes = std::fs::read(path).map_err(|source| MatrixFileError::Io {
        origin: origin.clone(),
        source,
    })?;
    let text = String::from_utf8_lossy(&bytes);
    Ok((parse_matrix(&text, &origin)?, bytes))
}

pub fn emit_matrix(m: &ComplexMatrix) -> String {
    serde_json::to_string(&MatrixFile::from(m)).expect("finite matrix serializes")
}
