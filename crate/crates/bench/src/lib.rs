//! Seeded inputs shared by the kernel benchmarks.

use opeq_core::random::{gaussian_matrix, positive_definite, psd};
use opeq_core::ComplexMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const SIZES: [usize; 3] = [4, 8, 16];

fn rng(n: usize, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed ^ ((n as u64) << 8) ^ salt)
}

pub fn general(n: usize) -> ComplexMatrix {
    gaussian_matrix(&mut rng(n, 1), n, n)
}

pub fn pd_pair(n: usize) -> (ComplexMatrix, ComplexMatrix) {
    let mut r = rng(n, 2);
    (positive_definite(&mut r, n), psd(&mut r, n))
}

pub fn hermitian(n: usize) -> ComplexMatrix {
    let g = general(n);
    (&g + &g.adjoint()).scale_real(0.5)
}
