mod common;

use common::{dist, rng};
use opeq_core::conditions::majorization_report;
use opeq_core::linalg::range_projector;
use opeq_core::random::{gaussian_matrix, low_rank_matrix, mixed_rank_matrix, psd, singular_psd, unitary};
use opeq_core::{majorization_lambda, pt_conditions, range_inclusion, ComplexMatrix, RankPolicy, Tolerances};
use proptest::prelude::*;
use rand::Rng;

/// B = A·C (solvable) or B = A·C + orthogonal contamination of norm ≥ 0.1.
fn instance(seed: u64, n: usize, k: usize, solvable: bool) -> (ComplexMatrix, ComplexMatrix) {
    let mut r = rng(seed);
    let rank = r.random_range(1..n);
    let a = low_rank_matrix(&mut r, n, n, rank);
    let mut b = &a * &gaussian_matrix(&mut r, n, k);
    if !solvable {
        let proj = range_projector(&a, RankPolicy::default()).unwrap();
        let w = &(&ComplexMatrix::identity(n) - &proj) * &gaussian_matrix(&mut r, n, k);
        let size = r.random_range(0.1..2.0);
        b = &b + &w.scale_real(size / w.frobenius_norm());
    }
    (a, b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn douglas_equivalence(seed: u64, n in 2usize..=7, k in 1usize..=4, solvable: bool) {
        let tol = Tolerances::default();
        let (a, b) = instance(seed, n, k, solvable);
        let inc = range_inclusion(&b, &a, tol.solve).unwrap();
        let lambda = majorization_lambda(&b, &a, &tol).unwrap();
        prop_assert_eq!(inc.holds, solvable);
        prop_assert_eq!(lambda.is_some(), solvable);
        // R(B) ⊆ R(A) iff BB* ≤ λAA* and R(BB*) ⊆ R(A)
        let gram = &b * &b.adjoint();
        let combined = majorization_report(&b, &a, &tol).unwrap().holds
            && range_inclusion(&gram, &a, tol.solve).unwrap().holds;
        prop_assert_eq!(inc.holds, combined);
    }

    #[test]
    fn scaled_unitary_factor(seed: u64, m in 1usize..=6, n in 1usize..=6, lam in 0.01f64..100.0) {
        let mut r = rng(seed);
        let c = mixed_rank_matrix(&mut r, m, n);
        let u = unitary(&mut r, n);
        let a = (&c * &u).scale_real(lam.sqrt());
        let lhs = &a * &a.adjoint();
        let rhs = (&c * &c.adjoint()).scale_real(lam);
        prop_assert!(dist(&lhs, &rhs) <= 1e-10 * (1.0 + rhs.frobenius_norm()));
        prop_assert!(range_inclusion(&a, &c, 1e-8).unwrap().holds);
    }

    #[test]
    fn necessity_for_singular_h(seed: u64, n in 2usize..=6) {
        let mut r = rng(seed);
        let h = singular_psd(&mut r, n);
        let t = psd(&mut r, n);
        let k = (&(&t * &h) * &t).hermitian_part();
        let c = pt_conditions(&h, &k, &Tolerances::default()).unwrap();
        prop_assert!(c.ii_a.holds, "{:?}", c.ii_a);
        prop_assert!(c.ii_b.holds, "{:?}", c.ii_b);
    }

    #[test]
    fn invertible_h_satisfies_all(seed: u64, n in 1usize..=6) {
        let mut r = rng(seed);
        let h = opeq_core::random::positive_definite(&mut r, n);
        let k = psd(&mut r, n);
        let c = pt_conditions(&h, &k, &Tolerances::default()).unwrap();
        prop_assert!(c.cond_ii() && c.iii.holds && c.iv.holds);
    }
}
