//! Adjointable multiplication operators on E = A ⊕ M and on ℓ²(A).

use serde::{Deserialize, Serialize};

use super::element::ModuleElement;
use super::grid::GridFunction;
use crate::error::{OpError, Result};
use crate::linalg::{ComplexMatrix, C64};

/// `Block[i][j]` multiplies component `j` into component `i`; `None` is the zero map.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ModuleOperator {
    Block([[Option<GridFunction>; 2]; 2]),
    /// (f₁, f₂, …) ↦ (g·f₁, 0, 0, …) on ℓ²(A).
    FirstCoordinate(GridFunction),
}

impl ModuleOperator {
    pub fn block(
        b00: Option<GridFunction>,
        b01: Option<GridFunction>,
        b10: Option<GridFunction>,
        b11: Option<GridFunction>,
    ) -> Result<Self> {
        let blocks = [[b00, b01], [b10, b11]];
        let mut grid: Option<&GridFunction> = None;
        for g in blocks.iter().flatten().flatten() {
            match grid {
                Some(first) => first.check_grid(g)?,
                None => grid = Some(g),
            }
        }
        if grid.is_none() {
            return Err(OpError::InvalidGrid("block operator needs at least one multiplier".into()));
        }
        Ok(Self::Block(blocks))
    }

    pub fn intervals(&self) -> usize {
        match self {
            Self::Block(b) => b.iter().flatten().flatten().next().expect("non-empty").intervals(),
            Self::FirstCoordinate(g) => g.intervals(),
        }
    }

    /// The multiplier matrix at node j.
    pub fn matrix_at_node(&self, j: usize) -> ComplexMatrix {
        self.matrix_with(|g| g.samples()[j])
    }

    /// The multiplier matrix at x ∈ [0,1] by linear interpolation.
    pub fn matrix_at(&self, x: f64) -> ComplexMatrix {
        self.matrix_with(|g| g.at(x))
    }

    fn matrix_with(&self, eval: impl Fn(&GridFunction) -> C64) -> ComplexMatrix {
        match self {
            Self::Block(b) => ComplexMatrix::from_fn(2, 2, |i, j| {
                b[i][j].as_ref().map_or(C64::new(0.0, 0.0), &eval)
            }),
            Self::FirstCoordinate(g) => ComplexMatrix::from_fn(1, 1, |_, _| eval(g)),
        }
    }
}

pub fn op_apply(t: &ModuleOperator, x: &ModuleElement) -> Result<ModuleElement> {
    match (t, x) {
        (ModuleOperator::Block(b), ModuleElement::Direct { a_part, m_part }) => {
            same_grid(t.intervals(), a_part.intervals())?;
            let input = [a_part, m_part];
            let row = |i: usize| -> Result<GridFunction> {
                let mut acc = GridFunction::zero(a_part.intervals())?;
                for (j, part) in input.iter().enumerate() {
                    if let Some(g) = &b[i][j] {
                        acc = &acc + &(g * part);
                    }
                }
                Ok(acc)
            };
            ModuleElement::direct(row(0)?, row(1)?)
        }
        (ModuleOperator::FirstCoordinate(g), ModuleElement::Sequence(coords)) => {
            g.check_grid(&coords[0])?;
            let mut out = Vec::with_capacity(coords.len());
            out.push(g * &coords[0]);
            for _ in 1..coords.len() {
                out.push(GridFunction::zero(g.intervals())?);
            }
            Ok(ModuleElement::Sequence(out))
        }
        _ => Err(OpError::VariantMismatch("operator and element live on different modules")),
    }
}

pub fn op_adjoint(t: &ModuleOperator) -> ModuleOperator {
    match t {
        ModuleOperator::Block(b) => {
            let c = |i: usize, j: usize| b[j][i].as_ref().map(GridFunction::conj);
            ModuleOperator::Block([[c(0, 0), c(0, 1)], [c(1, 0), c(1, 1)]])
        }
        ModuleOperator::FirstCoordinate(g) => ModuleOperator::FirstCoordinate(g.conj()),
    }
}

/// s ∘ t.
pub fn op_compose(s: &ModuleOperator, t: &ModuleOperator) -> Result<ModuleOperator> {
    same_grid(s.intervals(), t.intervals())?;
    match (s, t) {
        (ModuleOperator::Block(a), ModuleOperator::Block(b)) => {
            let entry = |i: usize, j: usize| -> Option<GridFunction> {
                let mut acc: Option<GridFunction> = None;
                for k in 0..2 {
                    if let (Some(x), Some(y)) = (&a[i][k], &b[k][j]) {
                        let p = x * y;
                        acc = Some(match acc {
                            Some(prev) => &prev + &p,
                            None => p,
                        });
                    }
                }
                acc
            };
            let blocks = [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]];
            if blocks.iter().flatten().all(Option::is_none) {
                let zero = GridFunction::zero(s.intervals())?;
                return Ok(ModuleOperator::Block([[Some(zero), None], [None, None]]));
            }
            Ok(ModuleOperator::Block(blocks))
        }
        (ModuleOperator::FirstCoordinate(f), ModuleOperator::FirstCoordinate(g)) => {
            Ok(ModuleOperator::FirstCoordinate(f * g))
        }
        _ => Err(OpError::VariantMismatch("cannot compose operators on different modules")),
    }
}

fn same_grid(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(OpError::GridMismatch { left, right })
    }
}

/// min over nodes of λ_min(c·t(λ) − s(λ)) for self-adjoint s, t.
///
/// c·t ≥ s as module operators iff the result is ≥ −τ_psd.
pub fn op_psd_gap(s: &ModuleOperator, t: &ModuleOperator, c: f64) -> Result<f64> {
    same_grid(s.intervals(), t.intervals())?;
    match (s, t) {
        (ModuleOperator::Block(_), ModuleOperator::Block(_))
        | (ModuleOperator::FirstCoordinate(_), ModuleOperator::FirstCoordinate(_)) => {}
        _ => return Err(OpError::VariantMismatch("op_psd_gap needs operators on the same module")),
    }
    let mut gap = f64::INFINITY;
    for j in 0..=s.intervals() {
        let ms = s.matrix_at_node(j);
        let mt = t.matrix_at_node(j);
        let d = &mt.scale_real(c) - &ms;
        gap = gap.min(min_eig_small(&d));
    }
    Ok(gap)
}

/// Smallest eigenvalue of the Hermitian part of a 1x1 or 2x2 matrix.
fn min_eig_small(m: &ComplexMatrix) -> f64 {
    if m.rows() == 1 {
        return m[(0, 0)].re;
    }
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let b = (m[(0, 1)] + m[(1, 0)].conj()) * 0.5;
    let mean = 0.5 * (a + d);
    let half = 0.5 * (a - d);
    mean - (half * half + b.norm_sqr()).sqrt()
}
