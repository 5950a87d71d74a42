//! Range membership for multiplication operators on the grid model.
//!
//! A target t lies in the range of multiplication by m when t/m extends to
//! an element of C[0,1] (and of the ideal M when the operator's domain is M).
//! Both ways this fails in practice are finitely checkable: the candidate
//! quotient either has the wrong boundary value at 0 or its sup-norm grows
//! under grid refinement.

use serde::{Deserialize, Serialize};

use super::grid::GridFunction;
use crate::error::{OpError, Result};
use crate::linalg::C64;

/// sup-norm growth under grid doubling tolerated for a bounded quotient.
pub const STABILITY_FACTOR: f64 = 1.1;

/// f ∈ M = {f : f(0) = 0}, i.e. |f(0)| ≤ tol·(1 + sup|f|).
pub fn in_ideal_m(f: &GridFunction, tol: f64) -> bool {
    f.samples()[0].norm() <= tol * (1.0 + f.sup_norm())
}

/// Pointwise quotient target/multiplier on the positive nodes, with the value
/// at 0 extrapolated linearly from λ₁ and λ₂.
pub fn divide_on_grid(target: &GridFunction, multiplier: &GridFunction) -> Result<GridFunction> {
    target.check_grid(multiplier)?;
    let (t, m) = (target.samples(), multiplier.samples());
    let mut g = vec![C64::new(0.0, 0.0); t.len()];
    for j in 1..t.len() {
        if m[j].norm() == 0.0 {
            return Err(OpError::VanishingMultiplier { node: j });
        }
        g[j] = t[j] / m[j];
    }
    g[0] = g[1] * 2.0 - g[2];
    GridFunction::new(g)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Preimage {
    /// Candidate quotient on the requested grid.
    pub preimage: GridFunction,
    pub in_range: bool,
    /// sup-norm stable under doubling (ratio < [`STABILITY_FACTOR`]).
    pub bounded: bool,
    pub in_ideal: bool,
    pub sup_norm: f64,
    pub refined_sup_norm: f64,
    /// sup|g| on 2n intervals over sup|g| on n intervals.
    pub divergence_ratio: f64,
}

/// Decides whether `target` lies in the range of multiplication by `multiplier`.
///
/// Both functions are sampled on `n` and `2n` intervals; `require_ideal`
/// additionally demands the quotient vanish at 0.
pub fn multiplier_preimage(
    target: &dyn Fn(f64) -> C64,
    multiplier: &dyn Fn(f64) -> C64,
    n: usize,
    require_ideal: bool,
    ideal_tol: f64,
) -> Result<Preimage> {
    let coarse = divide_on_grid(&GridFunction::sample(n, target)?, &GridFunction::sample(n, multiplier)?)?;
    let fine = divide_on_grid(
        &GridFunction::sample(2 * n, target)?,
        &GridFunction::sample(2 * n, multiplier)?,
    )?;
    let sup_norm = coarse.sup_norm();
    let refined_sup_norm = fine.sup_norm();
    let divergence_ratio = if sup_norm == 0.0 {
        if refined_sup_norm == 0.0 {
            1.0
        } else {
            f64::MAX
        }
    } else {
        refined_sup_norm / sup_norm
    };
    let bounded = divergence_ratio < STABILITY_FACTOR;
    let in_ideal = in_ideal_m(&coarse, ideal_tol);
    Ok(Preimage {
        preimage: coarse,
        in_range: bounded && (!require_ideal || in_ideal),
        bounded,
        in_ideal,
        sup_norm,
        refined_sup_norm,
        divergence_ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(f: fn(f64) -> f64) -> impl Fn(f64) -> C64 {
        move |x| C64::new(f(x), 0.0)
    }

    #[test]
    fn ideal_membership() {
        let n = 64;
        assert!(in_ideal_m(&GridFunction::coordinate(n).unwrap(), 1e-9));
        assert!(!in_ideal_m(&GridFunction::constant(n, C64::new(1.0, 0.0)).unwrap(), 1e-9));
        let g = GridFunction::sample(n, |l| C64::new(l.cbrt() * (2.0 + l.sin()), l.cbrt())).unwrap();
        assert!(in_ideal_m(&g, 1e-9));
    }

    #[test]
    fn exact_division() {
        let p = multiplier_preimage(&re(|l| l * l), &re(|l| l), 1024, false, 1e-9).unwrap();
        assert!(p.in_range && p.bounded);
        assert!((&p.preimage - &GridFunction::coordinate(1024).unwrap()).sup_norm() < 1e-15);
    }

    #[test]
    fn constant_quotient_leaves_ideal() {
        let p = multiplier_preimage(&re(|l| l), &re(|l| l), 1024, true, 1e-9).unwrap();
        assert!(p.bounded && !p.in_ideal && !p.in_range);
        assert_eq!(p.preimage.samples()[0], C64::new(1.0, 0.0));
    }

    #[test]
    fn reciprocal_diverges() {
        // 1/λ: sup at n intervals is 1.5n after extrapolation to 0, so doubling gives exactly 2
        let p = multiplier_preimage(&re(|_| 1.0), &re(|l| l), 1024, false, 1e-9).unwrap();
        assert!(!p.in_range && !p.bounded);
        assert!((p.divergence_ratio - 2.0).abs() < 1e-12);
        assert!((p.sup_norm - 1536.0).abs() < 1e-9);
    }

    #[test]
    fn vanishing_multiplier_rejected() {
        let err = multiplier_preimage(&re(|l| l), &re(|l| l - 0.5), 16, false, 1e-9).unwrap_err();
        assert_eq!(err, OpError::VanishingMultiplier { node: 8 });
    }
}
