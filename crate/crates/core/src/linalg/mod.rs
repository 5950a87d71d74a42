//! Dense complex linear algebra: the numerical substrate for every solver.

mod eig;
mod functions;
mod matrix;
mod svd;

pub use eig::{herm_eig, HermitianEig, MAX_SWEEPS, OFF_DIAGONAL_TOL};
pub use functions::{
    is_psd, numerical_rank, pinv, psd_gap, psd_pinv_power, psd_power, psd_spectrum, psd_sqrt,
    range_projector, RankPolicy, HERMITIAN_TOL,
};
pub use matrix::{mat_algebra, ComplexMatrix, MatOp, C64};
pub use svd::{spectral_norm, svd, SvdResult};
