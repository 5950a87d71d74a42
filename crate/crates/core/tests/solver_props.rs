mod common;

use common::{dist, rel, rng};
use opeq_core::linalg::{herm_eig, pinv, psd_gap, psd_sqrt, spectral_norm};
use opeq_core::random::{gaussian_matrix, mixed_rank_matrix, positive_definite, psd};
use opeq_core::{
    axb_reduced_solve, congruence_solve, douglas_reduced_solve, general_solution, pt_solve, riccati_geomean,
    verify_solution, ComplexMatrix, Equation, PtVerdict, RankPolicy, Tolerances,
};
use proptest::prelude::*;

fn inverse(h: &ComplexMatrix) -> ComplexMatrix {
    pinv(h, RankPolicy::default()).unwrap().hermitian_part()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn douglas_round_trip(seed: u64, m in 1usize..=6, n in 1usize..=6, k in 1usize..=4) {
        let mut r = rng(seed);
        let a = mixed_rank_matrix(&mut r, m, n);
        let x0 = gaussian_matrix(&mut r, n, k);
        let b = &a * &x0;
        let s = douglas_reduced_solve(&a, &b, &Tolerances::default()).unwrap();
        prop_assert!(s.solved, "{:?}", s.conditions);
        prop_assert!(s.residual <= 1e-8);
        let projected = &(&pinv(&a, RankPolicy::default()).unwrap() * &a) * &x0;
        prop_assert!(dist(&s.solution, &projected) <= 1e-8 * (1.0 + x0.frobenius_norm()));
    }

    #[test]
    fn axb_general_solution(seed: u64, m in 1usize..=5, n in 1usize..=5, p in 1usize..=5, q in 1usize..=5) {
        let mut r = rng(seed);
        let a = mixed_rank_matrix(&mut r, m, n);
        let b = mixed_rank_matrix(&mut r, p, q);
        let c = &(&a * &gaussian_matrix(&mut r, n, p)) * &b;
        let s = axb_reduced_solve(&a, &b, &c, &Tolerances::default()).unwrap();
        prop_assert!(s.solved, "{:?}", s.conditions);
        let scale = 1.0 + a.frobenius_norm() * b.frobenius_norm();
        for _ in 0..4 {
            let v1 = gaussian_matrix(&mut r, n, p);
            let v2 = gaussian_matrix(&mut r, n, p);
            let x = general_solution(&s, &v1, &v2).unwrap();
            let drift = &(&a * &(&x - &s.solution)) * &b;
            prop_assert!(drift.frobenius_norm() <= 1e-8 * scale * (1.0 + v1.frobenius_norm() + v2.frobenius_norm()));
            let res = verify_solution(Equation::AxbC { a: &a, b: &b, c: &c }, &x).unwrap();
            prop_assert!(res <= 1e-8 * scale);
        }
    }

    #[test]
    fn pt_uniqueness_and_bound(seed: u64, n in 1usize..=8) {
        let mut r = rng(seed);
        let h = positive_definite(&mut r, n);
        let k = psd(&mut r, n);
        let tol = Tolerances::default();
        let rep = pt_solve(&h, &k, &tol).unwrap();
        prop_assert_eq!(rep.verdict, PtVerdict::Solved);
        let x = rep.solution.unwrap();
        prop_assert!(rep.residual.unwrap() <= 1e-8);

        // the positive solution is H⁻¹ # K
        let mean = riccati_geomean(&inverse(&h), &k, &tol).unwrap();
        prop_assert!(rel(&x, &mean) <= 1e-8);

        // and the reduced solution of H^½ T H^½ = (H^½KH^½)^½
        let root = psd_sqrt(&h, tol.clamp).unwrap();
        let s = psd_sqrt(&(&(&root * &k) * &root).hermitian_part(), tol.clamp).unwrap();
        let alt = axb_reduced_solve(&root, &root, &s, &tol).unwrap();
        prop_assert!(rel(&alt.solution, &x) <= 1e-8);

        let a = rep.a_min.unwrap();
        let scale = 1.0 + s.frobenius_norm() + a * h.frobenius_norm();
        prop_assert!(psd_gap(&s, &h.scale_real(a)).unwrap() >= -1e-8 * scale);
        if a > 0.0 {
            prop_assert!(psd_gap(&s, &h.scale_real(a * (1.0 - 1e-6))).unwrap() < 0.0);
        }
    }

    #[test]
    fn geomean_symmetry(seed: u64, n in 1usize..=8) {
        let mut r = rng(seed);
        let a = positive_definite(&mut r, n);
        let b = positive_definite(&mut r, n);
        let tol = Tolerances::default();
        let ab = riccati_geomean(&a, &b, &tol).unwrap();
        let ba = riccati_geomean(&b, &a, &tol).unwrap();
        prop_assert!(rel(&ab, &ba) <= 1e-8);
        let res = verify_solution(Equation::Riccati { a: &a, b: &b }, &ab).unwrap();
        prop_assert!(res <= 1e-8);
        prop_assert!(rel(&riccati_geomean(&a, &a, &tol).unwrap(), &a) <= 1e-9);
    }

    #[test]
    fn congruence_positivity(seed: u64, m in 1usize..=6, n in 1usize..=6) {
        let mut r = rng(seed);
        let a = mixed_rank_matrix(&mut r, m, n);
        let y = psd(&mut r, n);
        let c = (&(&a * &y) * &a.adjoint()).hermitian_part();
        let s = congruence_solve(&a, &c, &Tolerances::default()).unwrap();
        prop_assert!(s.solved, "{:?}", s.conditions);
        prop_assert!(s.residual <= 1e-8);
        let x = &s.solution;
        let e = herm_eig(&x.hermitian_part(), 1e-8).unwrap();
        let norm = spectral_norm(x).unwrap();
        prop_assert!(e.min() >= -1e-9 * norm.max(1.0));
    }

    #[test]
    fn contaminated_douglas_unsolvable(seed: u64, n in 2usize..=6) {
        let mut r = rng(seed);
        // rank n-1 so that R(A)^⊥ is nontrivial
        let a = opeq_core::random::low_rank_matrix(&mut r, n, n, n - 1);
        let proj = opeq_core::linalg::range_projector(&a, RankPolicy::default()).unwrap();
        let noise = &(&ComplexMatrix::identity(n) - &proj) * &gaussian_matrix(&mut r, n, 1);
        let noise = noise.scale_real(1.0 / noise.frobenius_norm());
        let b = &(&a * &gaussian_matrix(&mut r, n, 1)) + &noise;
        let s = douglas_reduced_solve(&a, &b, &Tolerances::default()).unwrap();
        prop_assert!(!s.solved);
    }
}
