#![allow(dead_code)]

use opeq_core::ComplexMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn dist(x: &ComplexMatrix, y: &ComplexMatrix) -> f64 {
    (x - y).frobenius_norm()
}

pub fn rel(x: &ComplexMatrix, y: &ComplexMatrix) -> f64 {
    dist(x, y) / (1.0 + y.frobenius_norm())
}
