//! Singular value decomposition by one-sided (Hestenes) Jacobi rotations.
//!
//! Columns of a working copy are rotated pairwise until mutually orthogonal;
//! their norms are the singular values and the accumulated rotations are the
//! right singular vectors. Null and near-null directions are replaced by a
//! Gram-Schmidt completion so the left factor is always a full unitary.

use super::matrix::{ComplexMatrix, C64};
use crate::error::{OpError, Result};

const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct SvdResult {
    /// m×m unitary.
    pub left: ComplexMatrix,
    /// Descending, length min(m, n).
    pub singulars: Vec<f64>,
    /// n×n unitary.
    pub right: ComplexMatrix,
}

impl SvdResult {
    pub fn max_singular(&self) -> f64 {
        self.singulars.first().copied().unwrap_or(0.0)
    }

    /// U Σ V*.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let (m, n) = (self.left.rows(), self.right.rows());
        let mut out = ComplexMatrix::zeros(m, n);
        for (k, &s) in self.singulars.iter().enumerate() {
            if s == 0.0 {
                continue;
            }
            for i in 0..m {
                let uik = self.left[(i, k)] * s;
                for j in 0..n {
                    out[(i, j)] += uik * self.right[(j, k)].conj();
                }
            }
        }
        out
    }
}

pub fn svd(m: &ComplexMatrix) -> Result<SvdResult> {
    if m.rows() >= m.cols() {
        tall_svd(m)
    } else {
        let t = tall_svd(&m.adjoint())?;
        Ok(SvdResult {
            left: t.right,
            singulars: t.singulars,
            right: t.left,
        })
    }
}

/// Largest singular value.
pub fn spectral_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(svd(m)?.max_singular())
}

fn column_dot(w: &[Vec<C64>], p: usize, q: usize) -> (f64, f64, C64) {
    let mut alpha = 0.0;
    let mut beta = 0.0;
    let mut gamma = C64::new(0.0, 0.0);
    for (x, y) in w[p].iter().zip(&w[q]) {
        alpha += x.norm_sqr();
        beta += y.norm_sqr();
        gamma += x.conj() * y;
    }
    (alpha, beta, gamma)
}

fn rotate_pair(cols: &mut [Vec<C64>], p: usize, q: usize, c: f64, s: f64, phase: C64) {
    let (head, tail) = cols.split_at_mut(q);
    let cp = &mut head[p];
    let cq = &mut tail[0];
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let yq = *y * phase;
        let xp = *x;
        *x = xp * c - yq * s;
        *y = xp * s + yq * c;
    }
}

fn tall_svd(m: &ComplexMatrix) -> Result<SvdResult> {
    let (rows, cols) = m.shape();
    let mut w: Vec<Vec<C64>> = (0..cols).map(|j| m.column(j)).collect();
    let mut v: Vec<Vec<C64>> = (0..cols)
        .map(|j| {
            let mut e = vec![C64::new(0.0, 0.0); cols];
            e[j] = C64::new(1.0, 0.0);
            e
        })
        .collect();

    let mut converged = cols == 1;
    let mut sweeps = 0;
    while !converged && sweeps < MAX_SWEEPS {
        sweeps += 1;
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let (alpha, beta, gamma) = column_dot(&w, p, q);
                let g = gamma.norm();
                if g == 0.0 || g <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                // Rotating column q by conj(γ)/|γ| makes the pair's inner product real.
                let phase = gamma.conj() / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = if zeta.abs() > 1e150 {
                    0.5 / zeta
                } else {
                    zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate_pair(&mut w, p, q, c, s, phase);
                rotate_pair(&mut v, p, q, c, s, phase);
            }
        }
        converged = !rotated;
    }
    if !converged {
        return Err(OpError::NoConvergence { sweeps, off: f64::NAN });
    }

    let norms: Vec<f64> = w
        .iter()
        .map(|col| col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let singulars: Vec<f64> = order.iter().map(|&k| norms[k]).collect();
    let sigma_max = singulars[0];
    let cutoff = (rows.max(cols) as f64) * 2f64.powi(-50) * sigma_max;

    let mut u_cols: Vec<Vec<C64>> = Vec::with_capacity(rows);
    let mut pending = Vec::new();
    for (slot, &k) in order.iter().enumerate() {
        let s = norms[k];
        if s > cutoff && s > 0.0 {
            u_cols.push(w[k].iter().map(|z| z / s).collect());
        } else {
            u_cols.push(Vec::new());
            pending.push(slot);
        }
    }
    let mut basis: Vec<Vec<C64>> = u_cols.iter().filter(|c| !c.is_empty()).cloned().collect();
    for slot in pending {
        let e = complete_basis(&basis, rows);
        basis.push(e.clone());
        u_cols[slot] = e;
    }
    while u_cols.len() < rows {
        let e = complete_basis(&basis, rows);
        basis.push(e.clone());
        u_cols.push(e);
    }

    let left = ComplexMatrix::from_columns(rows, &u_cols);
    let v_sorted: Vec<Vec<C64>> = order.iter().map(|&k| v[k].clone()).collect();
    let right = ComplexMatrix::from_columns(cols, &v_sorted);
    Ok(SvdResult {
        left,
        singulars,
        right,
    })
}

/// Unit vector orthogonal to `basis`, taken as the standard basis vector with
/// the largest component outside span(basis), orthogonalized twice.
fn complete_basis(basis: &[Vec<C64>], dim: usize) -> Vec<C64> {
    let project_out = |mut x: Vec<C64>| {
        for _ in 0..2 {
            for b in basis {
                let coeff: C64 = b.iter().zip(&x).map(|(bi, xi)| bi.conj() * xi).sum();
                for (xi, bi) in x.iter_mut().zip(b) {
                    *xi -= coeff * bi;
                }
            }
        }
        x
    };
    let mut best: Option<(f64, Vec<C64>)> = None;
    for i in 0..dim {
        let mut e = vec![C64::new(0.0, 0.0); dim];
        e[i] = C64::new(1.0, 0.0);
        let r = project_out(e);
        let norm = r.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if best.as_ref().is_none_or(|(b, _)| norm > *b) {
            best = Some((norm, r));
        }
    }
    let (norm, r) = best.expect("dim > 0");
    r.into_iter().map(|z| z / norm).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unitarity_defect(v: &ComplexMatrix) -> f64 {
        (&(&v.adjoint() * v) - &ComplexMatrix::identity(v.cols())).frobenius_norm()
    }

    fn check(m: &ComplexMatrix) -> SvdResult {
        let s = svd(m).unwrap();
        assert!(unitarity_defect(&s.left) < 1e-12);
        assert!(unitarity_defect(&s.right) < 1e-12);
        assert!((&s.reconstruct() - m).frobenius_norm() <= 1e-12 * (1.0 + m.frobenius_norm()));
        assert!(s.singulars.windows(2).all(|w| w[0] >= w[1]));
        s
    }

    #[test]
    fn diagonal_absolute_values_sorted() {
        let s = check(&ComplexMatrix::from_real_diag(&[2.0, -3.0]));
        assert_eq!(s.singulars, vec![3.0, 2.0]);
    }

    #[test]
    fn rank_one_column() {
        let s = check(&ComplexMatrix::from_real(2, 1, &[1.0, 1.0]).unwrap());
        assert_eq!(s.singulars.len(), 1);
        assert!((s.singulars[0] - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn identity_singulars() {
        let s = check(&ComplexMatrix::identity(4));
        assert_eq!(s.singulars, vec![1.0; 4]);
    }

    #[test]
    fn wide_and_zero() {
        let m = ComplexMatrix::new(
            2,
            3,
            vec![
                C64::new(1.0, 1.0),
                C64::new(0.0, 2.0),
                C64::new(-1.0, 0.0),
                C64::new(2.0, -2.0),
                C64::new(0.0, -4.0),
                C64::new(2.0, 0.0),
            ],
        )
        .unwrap();
        check(&m);
        let z = check(&ComplexMatrix::zeros(3, 2));
        assert_eq!(z.singulars, vec![0.0, 0.0]);
    }
}
