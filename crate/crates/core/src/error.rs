use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OpError {
    #[error("dimension mismatch in {op}: {detail}")]
    Dimension { op: &'static str, detail: String },
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian (relative defect {defect:e})")]
    NotHermitian { defect: f64 },
    #[error("matrix is not positive semidefinite (min eigenvalue {min_eig:e})")]
    NotPsd { min_eig: f64 },
    #[error("matrix is not positive definite (min eigenvalue {min_eig:e}, threshold {threshold:e})")]
    NotPositiveDefinite { min_eig: f64, threshold: f64 },
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("matrix must have at least one row and one column")]
    Empty,
    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal mass {off:e})")]
    NoConvergence { sweeps: usize, off: f64 },
    #[error("invalid rank policy threshold {0}")]
    InvalidPolicy(f64),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("grid mismatch: {left} vs {right} intervals")]
    GridMismatch { left: usize, right: usize },
    #[error("operator/element variant mismatch: {0}")]
    VariantMismatch(&'static str),
    #[error("multiplier vanishes at interior node {node}")]
    VanishingMultiplier { node: usize },
    #[error("component leaves the ideal M: |f(0)| = {value:e}")]
    LeavesIdeal { value: f64 },
    #[error("pure state at x0 = {0} is invalid here")]
    DegenerateState(f64),
}

pub type Result<T> = std::result::Result<T, OpError>;
