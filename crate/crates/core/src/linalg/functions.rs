//! Pseudoinverses, range projectors and spectral functions of Hermitian
//! matrices.

use super::eig::{herm_eig, HermitianEig};
use super::matrix::ComplexMatrix;
use super::svd::{svd, SvdResult};
use crate::error::{OpError, Result};

/// Relative Hermitian defect tolerated by the spectral functions; computed
/// congruences such as H^{1/2} K H^{1/2} are Hermitian only up to roundoff.
pub const HERMITIAN_TOL: f64 = 1e-8;

/// Decides which singular values count as zero.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RankPolicy {
    relative_threshold: Option<f64>,
}

impl RankPolicy {
    /// Fixed relative cutoff `σ ≤ t·σ_max`; requires 0 < t < 1.
    pub fn relative(t: f64) -> Result<Self> {
        if t > 0.0 && t < 1.0 {
            Ok(Self {
                relative_threshold: Some(t),
            })
        } else {
            Err(OpError::InvalidPolicy(t))
        }
    }

    /// Relative threshold for a rows×cols matrix; the default is max(rows, cols)·2⁻⁵⁰.
    pub fn threshold(&self, rows: usize, cols: usize) -> f64 {
        self.relative_threshold
            .unwrap_or_else(|| rows.max(cols) as f64 * 2f64.powi(-50))
    }

    pub fn cutoff(&self, rows: usize, cols: usize, sigma_max: f64) -> f64 {
        self.threshold(rows, cols) * sigma_max
    }

    fn rank_of(&self, s: &SvdResult, rows: usize, cols: usize) -> usize {
        let cut = self.cutoff(rows, cols, s.max_singular());
        s.singulars.iter().take_while(|&&x| x > cut && x > 0.0).count()
    }
}

/// Moore-Penrose pseudoinverse V Σ⁺ U*.
pub fn pinv(m: &ComplexMatrix, policy: RankPolicy) -> Result<ComplexMatrix> {
    let s = svd(m)?;
    let r = policy.rank_of(&s, m.rows(), m.cols());
    let (rows, cols) = m.shape();
    let mut out = ComplexMatrix::zeros(cols, rows);
    for k in 0..r {
        let inv = 1.0 / s.singulars[k];
        for i in 0..cols {
            let vik = s.right[(i, k)] * inv;
            for j in 0..rows {
                out[(i, j)] += vik * s.left[(j, k)].conj();
            }
        }
    }
    Ok(out)
}

/// Orthogonal projector onto the numerical range of `m` (equal to m m⁺).
pub fn range_projector(m: &ComplexMatrix, policy: RankPolicy) -> Result<ComplexMatrix> {
    let s = svd(m)?;
    let r = policy.rank_of(&s, m.rows(), m.cols());
    Ok(column_projector(&s.left, r, m.rows()))
}

pub fn numerical_rank(m: &ComplexMatrix, policy: RankPolicy) -> Result<usize> {
    let s = svd(m)?;
    Ok(policy.rank_of(&s, m.rows(), m.cols()))
}

fn column_projector(u: &ComplexMatrix, r: usize, n: usize) -> ComplexMatrix {
    let mut p = ComplexMatrix::zeros(n, n);
    for k in 0..r {
        for i in 0..n {
            let uik = u[(i, k)];
            for j in 0..n {
                p[(i, j)] += uik * u[(j, k)].conj();
            }
        }
    }
    p
}

/// Validated spectrum of a PSD matrix with roundoff-level eigenvalues set
/// to zero.
///
/// Eigenvalues below `−tol·‖m‖` are an error. Everything at or below the
/// default rank cutoff `n·2⁻⁵⁰·‖m‖` (which includes the clamped negative
/// window) becomes exactly 0, so fractional powers do not amplify noise in
/// null directions.
pub fn psd_spectrum(m: &ComplexMatrix, tol: f64) -> Result<HermitianEig> {
    let mut eig = herm_eig(m, HERMITIAN_TOL)?;
    let radius = eig.spectral_radius();
    if eig.min() < -tol * radius {
        return Err(OpError::NotPsd { min_eig: eig.min() });
    }
    let floor = RankPolicy::default().cutoff(m.rows(), m.rows(), radius);
    for l in eig.eigenvalues.iter_mut() {
        if *l <= floor {
            *l = 0.0;
        }
    }
    Ok(eig)
}

/// m^p for Hermitian PSD `m` and p > 0.
pub fn psd_power(m: &ComplexMatrix, p: f64, tol: f64) -> Result<ComplexMatrix> {
    let eig = psd_spectrum(m, tol)?;
    Ok(eig.apply(|l| if l == 0.0 { 0.0 } else { l.powf(p) }).hermitian_part())
}

pub fn psd_sqrt(m: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    let eig = psd_spectrum(m, tol)?;
    Ok(eig.apply(|l| l.sqrt()).hermitian_part())
}

/// (m^p)⁺ computed spectrally: eigenvalues zeroed by [`psd_spectrum`] stay zero.
pub fn psd_pinv_power(m: &ComplexMatrix, p: f64, tol: f64) -> Result<ComplexMatrix> {
    let eig = psd_spectrum(m, tol)?;
    Ok(eig
        .apply(|l| if l == 0.0 { 0.0 } else { l.powf(-p) })
        .hermitian_part())
}

/// Minimum eigenvalue of `y − x`; `x ≤ y` in the Loewner order iff this is
/// non-negative up to roundoff.
pub fn psd_gap(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<f64> {
    x.require_same_shape(y, "psd_gap")?;
    x.require_hermitian(HERMITIAN_TOL)?;
    y.require_hermitian(HERMITIAN_TOL)?;
    Ok(herm_eig(&(y - x), HERMITIAN_TOL)?.min())
}

/// Whether a Hermitian matrix is PSD with slack `tol` relative to its spectral radius.
pub fn is_psd(m: &ComplexMatrix, tol: f64) -> Result<bool> {
    let eig = herm_eig(m, HERMITIAN_TOL)?;
    Ok(eig.min() >= -tol * eig.spectral_radius())
}
