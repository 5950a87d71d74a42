//! Constructive solvers returning the reduced (or positive) solution of each
//! equation together with residual diagnostics.
//!
//! Unsolvable instances are not errors: the solvers hand back the
//! least-squares reduced candidate and the failing condition reports, since
//! the size of the residual is itself the certificate.

use serde::{Deserialize, Serialize};

use crate::conditions::{pt_conditions, range_inclusion, require_psd, verify_solution, ConditionReport, Equation};
use crate::error::{OpError, Result};
use crate::linalg::{herm_eig, pinv, psd_pinv_power, psd_sqrt, spectral_norm, ComplexMatrix, RankPolicy, HERMITIAN_TOL};
use crate::tolerances::Tolerances;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReducedSolution {
    pub solution: ComplexMatrix,
    /// ‖A·X·B − C‖_F / (1 + ‖C‖_F) at `solution`.
    pub residual: f64,
    /// N_A = I − A⁺A.
    pub left_null_projector: ComplexMatrix,
    /// N_{B*} = I − BB⁺ (zero for AX = B).
    pub right_null_projector: ComplexMatrix,
    pub conditions: Vec<ConditionReport>,
    /// Every condition holds and the residual is within tolerance.
    pub solved: bool,
}

impl ReducedSolution {
    pub fn condition(&self, prefix: &str) -> Option<&ConditionReport> {
        self.conditions.iter().find(|c| c.name.starts_with(prefix))
    }
}

fn null_projector(p: &ComplexMatrix) -> ComplexMatrix {
    &ComplexMatrix::identity(p.rows()) - p
}

fn leakage(name: &str, m: &ComplexMatrix, scale: f64, tol: f64) -> ConditionReport {
    let w = m.frobenius_norm() / (1.0 + scale);
    ConditionReport::residual(name, w, tol, format!("relative leakage {w:.3e}"))
}

fn finish(
    solution: ComplexMatrix,
    residual: f64,
    left: ComplexMatrix,
    right: ComplexMatrix,
    conditions: Vec<ConditionReport>,
    tol: &Tolerances,
) -> ReducedSolution {
    let solved = residual <= tol.solve && conditions.iter().all(|c| c.holds);
    ReducedSolution {
        solution,
        residual,
        left_null_projector: left,
        right_null_projector: right,
        conditions,
        solved,
    }
}

/// Reduced solution D = A⁺B of AX = B.
pub fn douglas_reduced_solve(a: &ComplexMatrix, b: &ComplexMatrix, tol: &Tolerances) -> Result<ReducedSolution> {
    a.require_same_rows(b, "douglas_reduced_solve")?;
    let a_pinv = pinv(a, RankPolicy::default())?;
    let d = &a_pinv * b;
    let n_a = null_projector(&(&a_pinv * a));
    let residual = verify_solution(Equation::AxB { a, b }, &d)?;
    let conditions = vec![
        range_inclusion(b, a, tol.solve)?.named("R(B) ⊆ R(A)"),
        leakage("N_A·D = 0", &(&n_a * &d), d.frobenius_norm(), tol.reduced),
    ];
    let right = ComplexMatrix::zeros(b.cols(), b.cols());
    Ok(finish(d, residual, n_a, right, conditions, tol))
}

/// Reduced solution D = A⁺CB⁺ of AXB = C.
pub fn axb_reduced_solve(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    tol: &Tolerances,
) -> Result<ReducedSolution> {
    if a.rows() != c.rows() || b.cols() != c.cols() {
        return Err(OpError::Dimension {
            op: "axb_reduced_solve",
            detail: format!(
                "A {}x{}, B {}x{}, C {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols(),
                c.rows(),
                c.cols()
            ),
        });
    }
    let a_pinv = pinv(a, RankPolicy::default())?;
    let b_pinv = pinv(b, RankPolicy::default())?;
    let a_pinv_c = &a_pinv * c;
    let d = &a_pinv_c * &b_pinv;
    let n_a = null_projector(&(&a_pinv * a));
    let n_bstar = null_projector(&(b * &b_pinv));
    let residual = verify_solution(Equation::AxbC { a, b, c }, &d)?;
    let scale = d.frobenius_norm();
    let conditions = vec![
        range_inclusion(c, a, tol.solve)?.named("R(C) ⊆ R(A)"),
        range_inclusion(&a_pinv_c.adjoint(), &b.adjoint(), tol.solve)?.named("R((A⁺C)*) ⊆ R(B*)"),
        leakage("N_A·D = 0", &(&n_a * &d), scale, tol.reduced),
        leakage("D·N_{B*} = 0", &(&d * &n_bstar), scale, tol.reduced),
    ];
    Ok(finish(d, residual, n_a, n_bstar, conditions, tol))
}

/// X = D + N_A·V₁ + V₂·N_{B*}.
pub fn general_solution(rs: &ReducedSolution, v1: &ComplexMatrix, v2: &ComplexMatrix) -> Result<ComplexMatrix> {
    rs.solution.require_same_shape(v1, "general_solution")?;
    rs.solution.require_same_shape(v2, "general_solution")?;
    let left = rs.left_null_projector.try_mul(v1)?;
    let right = v2.try_mul(&rs.right_null_projector)?;
    rs.solution.try_add(&left)?.try_add(&right)
}

/// Positive solution X = A⁺C(A⁺)* of AXA* = C for PSD C.
pub fn congruence_solve(a: &ComplexMatrix, c: &ComplexMatrix, tol: &Tolerances) -> Result<ReducedSolution> {
    c.require_square()?;
    a.require_same_rows(c, "congruence_solve")?;
    require_psd(c, tol.psd)?;
    let a_pinv = pinv(a, RankPolicy::default())?;
    let a_pinv_c = &a_pinv * c;
    // Hermitian in exact arithmetic; symmetrize so near-zero X keeps a clean spectrum
    let x = (&a_pinv * &a_pinv_c.adjoint()).adjoint().hermitian_part();
    let n_a = null_projector(&(&a_pinv * a));
    let residual = verify_solution(Equation::AxaStarC { a, c }, &x)?;

    let eig = herm_eig(&x, HERMITIAN_TOL)?;
    let positivity = ConditionReport::gap(
        "X ≥ 0",
        eig.min() / eig.spectral_radius().max(f64::MIN_POSITIVE),
        tol.psd,
        format!("min eigenvalue {:.3e}", eig.min()),
    );
    let conditions = vec![
        range_inclusion(c, a, tol.solve)?.named("R(C) ⊆ R(A)"),
        range_inclusion(&a_pinv_c.adjoint(), a, tol.solve)?.named("R((A⁺C)*) ⊆ R(A)"),
        positivity,
    ];
    Ok(finish(x, residual, n_a.clone(), n_a, conditions, tol))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PtVerdict {
    Solved,
    /// H was nonsingular but the candidate missed the residual or positivity tolerance.
    Unsolvable,
    /// H is singular: only the necessary range conditions were evaluated.
    DegenerateH,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PtReport {
    pub verdict: PtVerdict,
    pub solution: Option<ComplexMatrix>,
    /// ‖X‖, the least a with (H^½KH^½)^½ ≤ aH.
    pub a_min: Option<f64>,
    pub residual: Option<f64>,
    pub cond_ii: bool,
    pub cond_iii: bool,
    pub cond_iv: bool,
    pub conditions: Vec<ConditionReport>,
}

/// Positive solution of XHX = K for PSD H, K with H nonsingular:
/// X = (H^½)⁺ (H^½KH^½)^½ (H^½)⁺.
pub fn pt_solve(h: &ComplexMatrix, k: &ComplexMatrix, tol: &Tolerances) -> Result<PtReport> {
    let conds = pt_conditions(h, k, tol)?;
    let (cond_ii, cond_iii, cond_iv) = (conds.cond_ii(), conds.iii.holds, conds.iv.holds);
    let mut conditions = conds.into_list();

    let spectrum = herm_eig(h, HERMITIAN_TOL)?;
    let threshold = tol.nonsing * spectrum.spectral_radius();
    let nonsingular = spectrum.min() > threshold;
    conditions.push(ConditionReport::gap(
        "H nonsingular",
        spectrum.min() - threshold,
        0.0,
        format!("min eigenvalue {:.3e}, threshold {:.3e}", spectrum.min(), threshold),
    ));
    if !nonsingular {
        return Ok(PtReport {
            verdict: PtVerdict::DegenerateH,
            solution: None,
            a_min: None,
            residual: None,
            cond_ii,
            cond_iii,
            cond_iv,
            conditions,
        });
    }

    let root = psd_sqrt(h, tol.clamp)?;
    let root_pinv = psd_pinv_power(h, 0.5, tol.clamp)?;
    let inner = (&(&root * k) * &root).hermitian_part();
    let half = psd_sqrt(&inner, tol.clamp)?;
    let x = (&(&root_pinv * &half) * &root_pinv).hermitian_part();

    let residual = verify_solution(Equation::XhxK { h, k }, &x)?;
    let eig = herm_eig(&x, HERMITIAN_TOL)?;
    let a_min = spectral_norm(&x)?;
    let positive = eig.min() >= -tol.psd * a_min;
    conditions.push(ConditionReport::gap(
        "X ≥ 0",
        eig.min() / a_min.max(f64::MIN_POSITIVE),
        tol.psd,
        format!("min eigenvalue {:.3e}", eig.min()),
    ));
    let verdict = if residual <= tol.solve && positive {
        PtVerdict::Solved
    } else {
        PtVerdict::Unsolvable
    };
    Ok(PtReport {
        verdict,
        solution: Some(x),
        a_min: Some(a_min),
        residual: Some(residual),
        cond_ii,
        cond_iii,
        cond_iv,
        conditions,
    })
}

/// Geometric mean A#B = A^½ (A^{-½} B A^{-½})^½ A^½, the positive solution of XA⁻¹X = B.
pub fn riccati_geomean(a: &ComplexMatrix, b: &ComplexMatrix, tol: &Tolerances) -> Result<ComplexMatrix> {
    a.require_same_shape(b, "riccati_geomean")?;
    a.require_hermitian(HERMITIAN_TOL)?;
    let spectrum = herm_eig(a, HERMITIAN_TOL)?;
    let threshold = tol.nonsing * spectrum.spectral_radius();
    if spectrum.min() <= threshold {
        return Err(OpError::NotPositiveDefinite {
            min_eig: spectrum.min(),
            threshold,
        });
    }
    require_psd(b, tol.psd)?;
    let root = spectrum.apply(f64::sqrt).hermitian_part();
    let root_inv = spectrum.apply(|l| 1.0 / l.sqrt()).hermitian_part();
    let inner = (&(&root_inv * b) * &root_inv).hermitian_part();
    let middle = psd_sqrt(&inner, tol.clamp)?;
    Ok((&(&root * &middle) * &root).hermitian_part())
}
