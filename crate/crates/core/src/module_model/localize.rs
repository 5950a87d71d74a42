//! Localization at pure states of C[0,1] and the ℓ²(A) decomposition
//! R(B) ⊆ R(A) + N_{E,f}.
//!
//! Pure states of C[0,1] are point evaluations δ_{x0}. Quotienting by
//! N_{E,δ} = {x : ⟨x,x⟩(x0) = 0} evaluates every coordinate at x0, so
//! operators localize to their multiplier matrix at x0.

use serde::{Deserialize, Serialize};

use super::element::ModuleElement;
use super::grid::GridFunction;
use super::operator::{op_apply, ModuleOperator};
use crate::error::{OpError, Result};
use crate::linalg::{ComplexMatrix, C64};
use crate::solvers::{douglas_reduced_solve, ReducedSolution};
use crate::tolerances::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PureState {
    x0: f64,
}

impl PureState {
    pub fn new(x0: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&x0) {
            Ok(Self { x0 })
        } else {
            Err(OpError::DegenerateState(x0))
        }
    }

    /// The grid node nearest to `x0` on `n` intervals.
    pub fn at_node(x0: f64, n: usize) -> Result<Self> {
        Self::new((x0 * n as f64).round() / n as f64)
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }
}

pub fn localize(x: &ModuleElement, p: PureState) -> Vec<C64> {
    x.components().iter().map(|g| g.at(p.x0)).collect()
}

/// Multiplier matrix at x0 (2x2 on A ⊕ M, 1x1 on the first ℓ² coordinate).
pub fn localize_op(t: &ModuleOperator, p: PureState) -> ComplexMatrix {
    t.matrix_at(p.x0)
}

/// Classical Douglas problem π(A)·X = π(B) after localizing at `p`.
pub fn local_factorization(
    a: &ModuleOperator,
    b: &ModuleOperator,
    p: PureState,
    tol: &Tolerances,
) -> Result<ReducedSolution> {
    douglas_reduced_solve(&localize_op(a, p), &localize_op(b, p), tol)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub g: ModuleElement,
    pub h: ModuleElement,
    /// sup over the grid of |Bf − (Ag + h)|.
    pub residual: f64,
    /// |h₁(x0)|, zero when h ∈ N_{E,δ_{x0}}.
    pub h_at_state: f64,
}

/// The multipliers of the ℓ²(A) example: A = multiplication by λ, B = identity, both on coordinate 1.
pub fn l2_operators(n: usize) -> Result<(ModuleOperator, ModuleOperator)> {
    Ok((
        ModuleOperator::FirstCoordinate(GridFunction::coordinate(n)?),
        ModuleOperator::FirstCoordinate(GridFunction::constant(n, C64::new(1.0, 0.0))?),
    ))
}

/// Splits Bf = Ag + h with h(x0) = 0.
///
/// h₁ equals f₁ up to x0/2, falls linearly from f₁(x0/2) to 0 on [x0/2, x0]
/// and vanishes afterwards; g₁ = (f₁ − h₁)/λ with g₁(0) = 0.
pub fn thl2_decompose(f: &ModuleElement, p: PureState) -> Result<Decomposition> {
    let coords = match f {
        ModuleElement::Sequence(c) => c,
        ModuleElement::Direct { .. } => {
            return Err(OpError::VariantMismatch("thl2_decompose works on ℓ²(A) elements"))
        }
    };
    let x0 = p.x0;
    if x0 <= 0.0 {
        return Err(OpError::DegenerateState(x0));
    }
    let f1 = &coords[0];
    let n = f1.intervals();
    let half = x0 / 2.0;
    let f_half = f1.at(half);

    let mut h1 = Vec::with_capacity(n + 1);
    let mut g1 = Vec::with_capacity(n + 1);
    for (j, &fj) in f1.samples().iter().enumerate() {
        let l = j as f64 / n as f64;
        let hj = if l <= half {
            fj
        } else if l <= x0 {
            f_half * (2.0 * (x0 - l) / x0)
        } else {
            C64::new(0.0, 0.0)
        };
        h1.push(hj);
        g1.push(if j == 0 { C64::new(0.0, 0.0) } else { (fj - hj) / l });
    }
    let zero = GridFunction::zero(n)?;
    let pad = |first: GridFunction| {
        let mut v = vec![first];
        v.extend(std::iter::repeat_n(zero.clone(), coords.len() - 1));
        ModuleElement::Sequence(v)
    };
    let h = pad(GridFunction::new(h1)?);
    let g = pad(GridFunction::new(g1)?);

    let (a, b) = l2_operators(n)?;
    let bf = op_apply(&b, f)?;
    let ag = op_apply(&a, &g)?;
    let mut residual: f64 = 0.0;
    for ((x, y), z) in bf.components().iter().zip(ag.components()).zip(h.components()) {
        residual = residual.max((&(*x - y) - z).sup_norm());
    }
    let h_at_state = h.first().at(x0).norm();
    Ok(Decomposition {
        g,
        h,
        residual,
        h_at_state,
    })
}
