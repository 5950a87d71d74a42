use serde::{Deserialize, Serialize};

use super::grid::GridFunction;
use super::preimage::in_ideal_m;
use crate::error::{OpError, Result};
use crate::tolerances::Tolerances;

/// Element of E = A ⊕ M, or a finitely supported element of ℓ²(A).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ModuleElement {
    Direct { a_part: GridFunction, m_part: GridFunction },
    Sequence(Vec<GridFunction>),
}

impl ModuleElement {
    /// Checks that `m_part` lies in the ideal M = {f : f(0) = 0}.
    pub fn direct(a_part: GridFunction, m_part: GridFunction) -> Result<Self> {
        a_part.check_grid(&m_part)?;
        if !in_ideal_m(&m_part, Tolerances::default().ideal) {
            return Err(OpError::LeavesIdeal {
                value: m_part.samples()[0].norm(),
            });
        }
        Ok(Self::Direct { a_part, m_part })
    }

    pub fn sequence(coords: Vec<GridFunction>) -> Result<Self> {
        let first = coords
            .first()
            .ok_or_else(|| OpError::InvalidGrid("empty sequence element".into()))?;
        for c in &coords[1..] {
            first.check_grid(c)?;
        }
        Ok(Self::Sequence(coords))
    }

    pub fn components(&self) -> Vec<&GridFunction> {
        match self {
            Self::Direct { a_part, m_part } => vec![a_part, m_part],
            Self::Sequence(c) => c.iter().collect(),
        }
    }

    pub fn intervals(&self) -> usize {
        self.components()[0].intervals()
    }

    /// First coordinate (the A-part of a direct-sum element).
    pub fn first(&self) -> &GridFunction {
        self.components()[0]
    }
}

/// ⟨x, y⟩(λ) = Σ_k conj(x_k(λ))·y_k(λ), conjugate-linear in the first slot.
/// Sequence elements of different lengths are padded with zeros.
pub fn module_inner(x: &ModuleElement, y: &ModuleElement) -> Result<GridFunction> {
    match (x, y) {
        (ModuleElement::Direct { .. }, ModuleElement::Direct { .. })
        | (ModuleElement::Sequence(_), ModuleElement::Sequence(_)) => {}
        _ => return Err(OpError::VariantMismatch("module_inner needs elements of the same module")),
    }
    let (xs, ys) = (x.components(), y.components());
    xs[0].check_grid(ys[0])?;
    let mut acc = GridFunction::zero(xs[0].intervals())?;
    for (a, b) in xs.iter().zip(&ys) {
        acc = acc.zip_with(&a.zip_with(b, |u, v| u.conj() * v)?, |s, t| s + t)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::C64;

    #[test]
    fn inner_examples() {
        let n = 32;
        let one = GridFunction::constant(n, C64::new(1.0, 0.0)).unwrap();
        let zero = GridFunction::zero(n).unwrap();
        let x = ModuleElement::direct(one.clone(), zero.clone()).unwrap();
        assert!(module_inner(&x, &x).unwrap().samples().iter().all(|&z| z == C64::new(1.0, 0.0)));

        let w = GridFunction::sample(n, |l| C64::new(l.cos(), l * l - 0.3)).unwrap();
        let m = GridFunction::sample(n, |l| C64::new(l, -2.0 * l)).unwrap();
        let y = ModuleElement::direct(w, m).unwrap();
        let g = module_inner(&y, &y).unwrap();
        assert!(g.samples().iter().all(|z| z.im == 0.0 && z.re >= 0.0));

        let f = ModuleElement::sequence(vec![GridFunction::coordinate(n).unwrap(), zero]).unwrap();
        let g = module_inner(&f, &f).unwrap();
        for (j, z) in g.samples().iter().enumerate() {
            let l = j as f64 / n as f64;
            assert_eq!(*z, C64::new(l * l, 0.0));
        }
        assert!(module_inner(&x, &f).is_err());
    }

    #[test]
    fn m_part_must_vanish_at_zero() {
        let one = GridFunction::constant(16, C64::new(1.0, 0.0)).unwrap();
        assert!(matches!(
            ModuleElement::direct(one.clone(), one),
            Err(OpError::LeavesIdeal { .. })
        ));
    }
}
