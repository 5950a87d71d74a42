//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary and then applies a real plane rotation, so the pivot is annihilated
//! and the 2x2 diagonal stays real. Sweeps visit pairs in fixed row-major
//! order, which makes the result bit-reproducible for a given input.

use super::matrix::{ComplexMatrix, C64};
use crate::error::{OpError, Result};

/// Sweep limit for the cyclic Jacobi iteration.
pub const MAX_SWEEPS: usize = 100;
/// Convergence when off-diagonal Frobenius mass ≤ `OFF_DIAGONAL_TOL · ‖m‖_F`.
pub const OFF_DIAGONAL_TOL: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub struct HermitianEig {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors stored as columns, in eigenvalue order.
    pub vectors: ComplexMatrix,
}

impl HermitianEig {
    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }

    /// Largest eigenvalue magnitude (spectral norm of the input).
    pub fn spectral_radius(&self) -> f64 {
        self.min().abs().max(self.max().abs())
    }

    /// V · diag(f(λ)) · V*.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let v = &self.vectors;
        let n = v.rows();
        let values: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = ComplexMatrix::zeros(n, n);
        for (k, &fk) in values.iter().enumerate() {
            if fk == 0.0 {
                continue;
            }
            for i in 0..n {
                let vik = v[(i, k)] * fk;
                for j in 0..n {
                    out[(i, j)] += vik * v[(j, k)].conj();
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.apply(|l| l)
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Eigendecomposition of a Hermitian matrix.
///
/// `tol` bounds the accepted relative Hermitian defect ‖m − m*‖_F / ‖m‖_F; the
/// Hermitian part of `m` is what gets decomposed.
pub fn herm_eig(m: &ComplexMatrix, tol: f64) -> Result<HermitianEig> {
    m.require_hermitian(tol)?;
    let n = m.rows();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let norm = a.frobenius_norm();

    let mut converged = norm == 0.0 || n == 1;
    let mut sweeps = 0;
    while !converged {
        if off_diagonal_norm(&a) <= OFF_DIAGONAL_TOL * norm {
            converged = true;
            break;
        }
        if sweeps == MAX_SWEEPS {
            break;
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged {
        return Err(OpError::NoConvergence {
            sweeps,
            off: off_diagonal_norm(&a) / norm,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    Ok(HermitianEig {
        eigenvalues,
        vectors,
    })
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let b = a[(p, q)];
    let b_abs = b.norm();
    if b_abs == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // w removes the phase of the pivot: conj(1)·b·w = |b|.
    let w = (b / b_abs).conj();

    let theta = (aqq - app) / (2.0 * b_abs);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // G = diag(1, w) · [[c, s], [-s, c]] acting on coordinates (p, q).
    let g_qp = -w * s;
    let g_qq = w * c;
    let n = a.rows();

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c + akq * g_qp;
        a[(k, q)] = akp * s + akq * g_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c + aqk * g_qp.conj();
        a[(q, k)] = apk * s + aqk * g_qq.conj();
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(app - t * b_abs, 0.0);
    a[(q, q)] = C64::new(aqq + t * b_abs, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c + vkq * g_qp;
        v[(k, q)] = vkp * s + vkq * g_qq;
    }
}
