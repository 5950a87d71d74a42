//! Random test matrices for property sweeps.
//!
//! Every generator draws from a caller-supplied RNG only, so a seeded RNG
//! gives reproducible instances. Complex Gaussian entries are (X + iY)/√2
//! with X, Y standard normal.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::{ComplexMatrix, C64};

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

/// Product of Gaussian rows×rank and rank×cols factors; rank 0 gives zeros.
pub fn low_rank_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, rank: usize) -> ComplexMatrix {
    if rank == 0 {
        return ComplexMatrix::zeros(rows, cols);
    }
    let left = gaussian_matrix(rng, rows, rank);
    let right = gaussian_matrix(rng, rank, cols);
    &left * &right
}

/// Rank drawn uniformly from 1..=min(rows, cols).
pub fn mixed_rank_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    let rank = rng.random_range(1..=rows.min(cols));
    low_rank_matrix(rng, rows, cols, rank)
}

/// Haar-like unitary from Gram-Schmidt on a Gaussian matrix (two passes).
pub fn unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let g = gaussian_matrix(rng, n, n);
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v = g.column(j);
        for _ in 0..2 {
            for q in &cols {
                let coeff: C64 = q.iter().zip(&v).map(|(qi, vi)| qi.conj() * vi).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= coeff * qi;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    ComplexMatrix::from_columns(n, &cols)
}

/// U diag(eigenvalues) U* with a random unitary U.
pub fn hermitian_with_spectrum<R: Rng + ?Sized>(rng: &mut R, eigenvalues: &[f64]) -> ComplexMatrix {
    let n = eigenvalues.len();
    let u = unitary(rng, n);
    let d = ComplexMatrix::from_real_diag(eigenvalues);
    (&(&u * &d) * &u.adjoint()).hermitian_part()
}

/// Positive definite with eigenvalues uniform in [0.2, 2].
pub fn positive_definite<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let eigs: Vec<f64> = (0..n).map(|_| rng.random_range(0.2..2.0)).collect();
    hermitian_with_spectrum(rng, &eigs)
}

/// PSD with rank uniform in 0..=n and nonzero eigenvalues in [0.2, 2].
pub fn psd<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let rank = rng.random_range(0..=n);
    psd_of_rank(rng, n, rank)
}

/// Singular PSD (rank uniform in 0..n, so at least one zero eigenvalue).
pub fn singular_psd<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let rank = rng.random_range(0..n);
    psd_of_rank(rng, n, rank)
}

pub fn psd_of_rank<R: Rng + ?Sized>(rng: &mut R, n: usize, rank: usize) -> ComplexMatrix {
    let mut eigs = vec![0.0; n];
    for e in eigs.iter_mut().take(rank) {
        *e = rng.random_range(0.2..2.0);
    }
    hermitian_with_spectrum(rng, &eigs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..8 {
            let u = unitary(&mut rng, n);
            let d = (&(&u.adjoint() * &u) - &ComplexMatrix::identity(n)).frobenius_norm();
            assert!(d < 1e-13);
        }
    }

    #[test]
    fn seeded_generators_repeat() {
        let a = gaussian_matrix(&mut ChaCha8Rng::seed_from_u64(9), 3, 4);
        let b = gaussian_matrix(&mut ChaCha8Rng::seed_from_u64(9), 3, 4);
        assert_eq!(a, b);
    }
}
