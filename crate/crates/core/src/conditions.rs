//! Decision procedures for the solvability conditions: range inclusions,
//! majorization constants and the condition set for XHX = K.

use serde::{Deserialize, Serialize};

use crate::error::{OpError, Result};
use crate::linalg::{
    herm_eig, pinv, psd_gap, psd_power, psd_sqrt, range_projector, spectral_norm, ComplexMatrix,
    RankPolicy, HERMITIAN_TOL,
};
use crate::tolerances::Tolerances;

/// How to read [`ConditionReport::witness`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    /// Holds iff `witness ≤ tolerance`.
    Residual,
    /// Holds iff `witness ≥ −tolerance`.
    Gap,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub name: String,
    pub holds: bool,
    pub witness: f64,
    pub tolerance: f64,
    pub kind: WitnessKind,
    pub detail: String,
}

impl ConditionReport {
    pub fn residual(name: impl Into<String>, witness: f64, tolerance: f64, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            holds: witness <= tolerance,
            witness,
            tolerance,
            kind: WitnessKind::Residual,
            detail: detail.into(),
        }
    }

    pub fn gap(name: impl Into<String>, witness: f64, tolerance: f64, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            holds: witness >= -tolerance,
            witness,
            tolerance,
            kind: WitnessKind::Gap,
            detail: detail.into(),
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

/// R(B) ⊆ R(A), decided by the projector residual ‖(I − AA⁺)B‖_F / (1 + ‖B‖_F) ≤ tol.
pub fn range_inclusion(b: &ComplexMatrix, a: &ComplexMatrix, tol: f64) -> Result<ConditionReport> {
    a.require_same_rows(b, "range_inclusion")?;
    let p = range_projector(a, RankPolicy::default())?;
    let outside = b - &(&p * b);
    let witness = outside.frobenius_norm() / (1.0 + b.frobenius_norm());
    Ok(ConditionReport::residual(
        "R(B) ⊆ R(A)",
        witness,
        tol,
        format!("relative residual of B outside R(A): {witness:.3e}"),
    ))
}

/// Slack applied to λ before the a-posteriori Loewner check.
pub const LAMBDA_SLACK: f64 = 1e-6;

/// Smallest λ ≥ 0 with BB* ≤ λAA*, or `None` when no such λ exists.
///
/// In finite dimensions a dominating λ exists exactly when R(B) ⊆ R(A), and
/// the minimal one is ‖A⁺B‖². The value is re-checked against the Loewner
/// order with a relative slack of [`LAMBDA_SLACK`].
pub fn majorization_lambda(b: &ComplexMatrix, a: &ComplexMatrix, tol: &Tolerances) -> Result<Option<f64>> {
    if !range_inclusion(b, a, tol.solve)?.holds {
        return Ok(None);
    }
    let d = &pinv(a, RankPolicy::default())? * b;
    let lambda = spectral_norm(&d)?.powi(2);
    let bb = (b * &b.adjoint()).hermitian_part();
    let aa = (a * &a.adjoint()).hermitian_part();
    let dominated = aa.scale_real(lambda * (1.0 + LAMBDA_SLACK));
    let gap = psd_gap(&bb, &dominated)?;
    let scale = bb.frobenius_norm() + dominated.frobenius_norm();
    if gap >= -tol.psd * scale {
        Ok(Some(lambda))
    } else {
        Ok(None)
    }
}

/// [`majorization_lambda`] packaged as a condition; the witness is λ when it exists.
pub fn majorization_report(b: &ComplexMatrix, a: &ComplexMatrix, tol: &Tolerances) -> Result<ConditionReport> {
    let report = match majorization_lambda(b, a, tol)? {
        Some(lambda) => ConditionReport {
            name: "BB* ≤ λAA*".into(),
            holds: true,
            witness: lambda,
            tolerance: tol.psd,
            kind: WitnessKind::Gap,
            detail: format!("minimal λ = {lambda:.6e}"),
        },
        None => {
            let inc = range_inclusion(b, a, tol.solve)?;
            ConditionReport {
                name: "BB* ≤ λAA*".into(),
                holds: false,
                witness: -inc.witness,
                tolerance: tol.psd,
                kind: WitnessKind::Gap,
                detail: format!("no finite λ: B leaves R(A) with relative residual {:.3e}", inc.witness),
            }
        }
    };
    Ok(report)
}

pub(crate) fn require_psd(m: &ComplexMatrix, tol: f64) -> Result<()> {
    m.require_hermitian(HERMITIAN_TOL)?;
    let eig = herm_eig(m, HERMITIAN_TOL)?;
    if eig.min() < -tol * eig.spectral_radius() {
        return Err(OpError::NotPsd { min_eig: eig.min() });
    }
    Ok(())
}

/// Solvability conditions of XHX = K for a PSD pair (H, K).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PtConditions {
    /// R((H^½KH^½)^½) ⊆ R(H^½).
    pub ii_a: ConditionReport,
    /// R(((H^½)⁺(H^½KH^½)^½)*) ⊆ R(H^½).
    pub ii_b: ConditionReport,
    /// R((H^½KH^½)^¼) ⊆ R(H^½).
    pub iii: ConditionReport,
    /// (ii-a) together with (H^½KH^½)^½ ≤ λH for some λ.
    pub iv: ConditionReport,
}

impl PtConditions {
    pub fn cond_ii(&self) -> bool {
        self.ii_a.holds && self.ii_b.holds
    }

    pub fn into_list(self) -> Vec<ConditionReport> {
        vec![self.ii_a, self.ii_b, self.iii, self.iv]
    }
}

pub fn pt_conditions(h: &ComplexMatrix, k: &ComplexMatrix, tol: &Tolerances) -> Result<PtConditions> {
    h.require_same_shape(k, "pt_conditions")?;
    require_psd(h, tol.psd)?;
    require_psd(k, tol.psd)?;
    let root = psd_sqrt(h, tol.clamp)?;
    let inner = (&(&root * k) * &root).hermitian_part();
    let half = psd_sqrt(&inner, tol.clamp)?;
    let quarter = psd_power(&inner, 0.25, tol.clamp)?;

    let ii_a = range_inclusion(&half, &root, tol.solve)?.named("(ii-a) R((H^½KH^½)^½) ⊆ R(H^½)");
    let lifted = (&pinv(&root, RankPolicy::default())? * &half).adjoint();
    let ii_b = range_inclusion(&lifted, &root, tol.solve)?.named("(ii-b) R(((H^½)⁺(H^½KH^½)^½)*) ⊆ R(H^½)");
    let iii = range_inclusion(&quarter, &root, tol.solve)?.named("(iii) R((H^½KH^½)^¼) ⊆ R(H^½)");

    // (H^½KH^½)^½ = QQ* with Q the quarter power, and H = RR*.
    let major = majorization_report(&quarter, &root, tol)?;
    let iv = ConditionReport {
        name: "(iv) R((H^½KH^½)^½) ⊆ R(H^½) and (H^½KH^½)^½ ≤ λH".into(),
        holds: ii_a.holds && major.holds,
        witness: major.witness,
        tolerance: major.tolerance,
        kind: WitnessKind::Gap,
        detail: format!("{}; inclusion part {}", major.detail, if ii_a.holds { "holds" } else { "fails" }),
    };
    Ok(PtConditions { ii_a, ii_b, iii, iv })
}

/// Equation selector for [`verify_solution`].
#[derive(Debug, Clone, Copy)]
pub enum Equation<'a> {
    /// AX = B.
    AxB { a: &'a ComplexMatrix, b: &'a ComplexMatrix },
    /// AXB = C.
    AxbC {
        a: &'a ComplexMatrix,
        b: &'a ComplexMatrix,
        c: &'a ComplexMatrix,
    },
    /// AXA* = C.
    AxaStarC { a: &'a ComplexMatrix, c: &'a ComplexMatrix },
    /// XHX = K.
    XhxK { h: &'a ComplexMatrix, k: &'a ComplexMatrix },
    /// XA⁻¹X = B.
    Riccati { a: &'a ComplexMatrix, b: &'a ComplexMatrix },
}

/// Relative Frobenius residual ‖lhs(X) − rhs‖_F / (1 + ‖rhs‖_F).
pub fn verify_solution(eq: Equation<'_>, x: &ComplexMatrix) -> Result<f64> {
    let (lhs, rhs) = match eq {
        Equation::AxB { a, b } => (a.try_mul(x)?, b),
        Equation::AxbC { a, b, c } => (a.try_mul(x)?.try_mul(b)?, c),
        Equation::AxaStarC { a, c } => (a.try_mul(x)?.try_mul(&a.adjoint())?, c),
        Equation::XhxK { h, k } => (x.try_mul(h)?.try_mul(x)?, k),
        Equation::Riccati { a, b } => {
            a.require_square()?;
            let inv = pinv(a, RankPolicy::default())?;
            (x.try_mul(&inv)?.try_mul(x)?, b)
        }
    };
    let diff = lhs.try_sub(rhs)?;
    Ok(diff.frobenius_norm() / (1.0 + rhs.frobenius_norm()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::C64;

    fn diag(d: &[f64]) -> ComplexMatrix {
        ComplexMatrix::from_real_diag(d)
    }

    #[test]
    fn inclusion_examples() {
        let a = ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 2.0, 4.0]).unwrap();
        assert!(range_inclusion(&a, &a, 1e-8).unwrap().holds);

        let e2 = ComplexMatrix::from_real(2, 1, &[0.0, 1.0]).unwrap();
        let r = range_inclusion(&e2, &diag(&[1.0, 0.0]), 1e-8).unwrap();
        assert!(!r.holds);
        // ‖e₂‖ / (1 + ‖e₂‖) = 1/2
        assert!((r.witness - 0.5).abs() < 1e-15);

        assert!(range_inclusion(&e2, &ComplexMatrix::zeros(3, 1), 1e-8).is_err());
    }

    #[test]
    fn lambda_examples() {
        let t = Tolerances::default();
        let a = ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 0.0, 1.0]).unwrap();
        let l = majorization_lambda(&a, &a, &t).unwrap().unwrap();
        assert!((l - 1.0).abs() < 1e-12);

        let l = majorization_lambda(&ComplexMatrix::identity(2), &diag(&[2.0, 2.0]), &t)
            .unwrap()
            .unwrap();
        assert!((l - 0.25).abs() < 1e-14);

        let a = diag(&[1.0, 0.0]);
        let b = diag(&[0.0, 1.0]);
        assert_eq!(majorization_lambda(&b, &a, &t).unwrap(), None);
        let bb = &b * &b.adjoint();
        let aa = &a * &a.adjoint();
        for c in [1.0, 1e3, 1e6] {
            assert!(psd_gap(&bb, &aa.scale_real(c)).unwrap() < 0.0);
        }
    }

    #[test]
    fn zero_b_gives_zero_lambda() {
        let t = Tolerances::default();
        let l = majorization_lambda(&ComplexMatrix::zeros(2, 2), &diag(&[1.0, 0.0]), &t)
            .unwrap()
            .unwrap();
        assert_eq!(l, 0.0);
    }

    #[test]
    fn pt_conditions_invertible_h() {
        let t = Tolerances::default();
        let h = ComplexMatrix::from_real(2, 2, &[2.0, 1.0, 1.0, 2.0]).unwrap();
        let k = diag(&[1.0, 0.0]);
        let c = pt_conditions(&h, &k, &t).unwrap();
        assert!(c.cond_ii() && c.iii.holds && c.iv.holds);
    }

    #[test]
    fn pt_conditions_singular_h() {
        // H = diag(1,0), K = [[1,1],[1,1]]: H^½KH^½ = diag(1,0), whose powers lie in R(H^½).
        let t = Tolerances::default();
        let h = diag(&[1.0, 0.0]);
        let k = ComplexMatrix::from_real(2, 2, &[1.0, 1.0, 1.0, 1.0]).unwrap();
        let c = pt_conditions(&h, &k, &t).unwrap();
        assert!(c.ii_a.holds && c.ii_b.holds && c.iii.holds && c.iv.holds);
        assert!((c.iv.witness - 1.0).abs() < 1e-12);

        // K = diag(0,1) is invisible to H: H^½KH^½ = 0 and every condition holds vacuously.
        let c = pt_conditions(&h, &diag(&[0.0, 1.0]), &t).unwrap();
        assert!(c.ii_a.holds && c.ii_b.holds && c.iii.holds && c.iv.holds);
        assert_eq!(c.iv.witness, 0.0);
    }

    #[test]
    fn pt_conditions_reject_non_psd() {
        let t = Tolerances::default();
        assert!(matches!(
            pt_conditions(&diag(&[1.0, -1.0]), &diag(&[1.0, 1.0]), &t),
            Err(OpError::NotPsd { .. })
        ));
    }

    #[test]
    fn verify_examples() {
        let i = ComplexMatrix::identity(2);
        assert_eq!(verify_solution(Equation::XhxK { h: &i, k: &i }, &i).unwrap(), 0.0);

        let h = diag(&[1.0, 4.0]);
        let k = diag(&[9.0, 1.0]);
        let x = diag(&[3.0, 0.5]);
        assert!(verify_solution(Equation::XhxK { h: &h, k: &k }, &x).unwrap() < 1e-15);
        let mut bumped = x.clone();
        bumped[(0, 1)] += C64::new(1e-3, 0.0);
        bumped[(1, 0)] += C64::new(1e-3, 0.0);
        let r = verify_solution(Equation::XhxK { h: &h, k: &k }, &bumped).unwrap();
        assert!((1e-5..=1e-1).contains(&r), "residual {r}");

        assert!(verify_solution(Equation::AxB { a: &i, b: &i }, &ComplexMatrix::zeros(3, 3)).is_err());
    }
}
