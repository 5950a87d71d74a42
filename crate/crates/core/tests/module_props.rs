use opeq_core::linalg::C64;
use opeq_core::module_model::{
    localize, localize_op, module_inner, multiplier_preimage, op_adjoint, op_apply, op_compose, thl2_decompose,
    GridFunction, ModuleElement, ModuleOperator, PureState,
};
use proptest::prelude::*;

const N: usize = 64;

fn grid_fn(coeffs: [f64; 4]) -> GridFunction {
    let [a, b, c, d] = coeffs;
    GridFunction::sample(N, |l| C64::new(a + b * l * l, (c * l).sin() + d)).unwrap()
}

/// Same, but vanishing at 0 so it may sit in the M component.
fn ideal_fn(coeffs: [f64; 4]) -> GridFunction {
    let [a, b, c, d] = coeffs;
    GridFunction::sample(N, |l| C64::new(a * l + b * l * l, (c * l).sin() + d * l)).unwrap()
}

fn coeffs() -> impl Strategy<Value = [f64; 4]> {
    prop::array::uniform4(-3.0f64..3.0)
}

fn operator() -> impl Strategy<Value = ModuleOperator> {
    // adjointable on A ⊕ M: both off-diagonal multipliers vanish at 0, since each
    // one's adjoint maps A into M
    (coeffs(), coeffs(), coeffs(), coeffs()).prop_map(|(p, q, s, t)| {
        ModuleOperator::block(Some(grid_fn(p)), Some(ideal_fn(q)), Some(ideal_fn(s)), Some(grid_fn(t))).unwrap()
    })
}

fn element() -> impl Strategy<Value = ModuleElement> {
    (coeffs(), coeffs()).prop_map(|(p, q)| ModuleElement::direct(grid_fn(p), ideal_fn(q)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn adjoint_compatibility(t in operator(), x in element(), y in element()) {
        let lhs = module_inner(&op_apply(&t, &x).unwrap(), &y).unwrap();
        let rhs = module_inner(&x, &op_apply(&op_adjoint(&t), &y).unwrap()).unwrap();
        let scale = 1.0 + lhs.sup_norm();
        prop_assert!((&lhs - &rhs).sup_norm() <= 1e-9 * scale);
    }

    #[test]
    fn inner_product_positive(x in element()) {
        let q = module_inner(&x, &x).unwrap();
        prop_assert!(q.samples().iter().all(|z| z.re >= 0.0 && z.im == 0.0));
    }

    #[test]
    fn localization_homomorphism(s in operator(), t in operator(), j in 0usize..=N) {
        let p = PureState::new(j as f64 / N as f64).unwrap();
        let st = op_compose(&s, &t).unwrap();
        let product = &localize_op(&s, p) * &localize_op(&t, p);
        prop_assert!((&localize_op(&st, p) - &product).max_abs() <= 1e-12);
        prop_assert!((&localize_op(&op_adjoint(&s), p) - &localize_op(&s, p).adjoint()).max_abs() <= 1e-12);
    }

    #[test]
    fn localized_application(t in operator(), x in element(), j in 0usize..=N) {
        let p = PureState::new(j as f64 / N as f64).unwrap();
        let image = localize(&op_apply(&t, &x).unwrap(), p);
        let m = localize_op(&t, p);
        let v = localize(&x, p);
        for (i, w) in image.iter().enumerate() {
            let expected = m[(i, 0)] * v[0] + m[(i, 1)] * v[1];
            prop_assert!((w - expected).norm() <= 1e-12 * (1.0 + w.norm()));
        }
    }

    #[test]
    fn decomposition_residual(c in coeffs(), j in 1usize..N) {
        let f = ModuleElement::sequence(vec![grid_fn(c)]).unwrap();
        let p = PureState::new(j as f64 / N as f64).unwrap();
        let d = thl2_decompose(&f, p).unwrap();
        prop_assert!(d.residual <= 1e-9 * (1.0 + f.first().sup_norm()));
        prop_assert!(d.h_at_state <= 1e-12);
        prop_assert_eq!(d.g.first().samples()[0], C64::new(0.0, 0.0));
    }
}

#[test]
fn divergence_monotone() {
    let mut last = 0.0;
    for n in [256, 512, 1024, 2048] {
        let p = multiplier_preimage(&|_| C64::new(1.0, 0.0), &|l| C64::new(l, 0.0), n, true, 1e-9).unwrap();
        assert!(p.sup_norm > last, "n = {n}");
        assert!((1.9..=2.1).contains(&p.divergence_ratio), "n = {n}: {}", p.divergence_ratio);
        last = p.sup_norm;
    }
}

#[test]
fn majorized_pair_decomposes_locally() {
    use opeq_core::module_model::local_factorization;
    let n = 1024;
    let lam = GridFunction::coordinate(n).unwrap();
    let a = ModuleOperator::block(None, Some(lam.clone()), None, None).unwrap();
    let c = ModuleOperator::block(Some(lam), None, None, None).unwrap();
    for j in 1..16 {
        let p = PureState::new(j as f64 / 16.0).unwrap();
        let s = local_factorization(&a, &c, p, &Default::default()).unwrap();
        assert!(s.solved && s.residual <= 1e-9, "x0 = {}", p.x0());
    }
}
