//! Solvers and solvability checks for the operator equations AX = B,
//! AXB = C, AXA* = C, XHX = K and the Riccati equation
//! XA⁻¹X = B, on dense complex matrices, together with a grid-sampled model
//! of Hilbert C*-modules over C[0,1] in which the Douglas factorization can
//! fail.

pub mod conditions;
pub mod error;
pub mod linalg;
pub mod module_model;
pub mod random;
pub mod solvers;
pub mod tolerances;

pub use conditions::{
    majorization_lambda, pt_conditions, range_inclusion, verify_solution, ConditionReport,
    Equation,
};
pub use error::{OpError, Result};
pub use linalg::{ComplexMatrix, RankPolicy, C64};
pub use solvers::{
    axb_reduced_solve, congruence_solve, douglas_reduced_solve, general_solution, pt_solve,
    riccati_geomean, PtReport, PtVerdict, ReducedSolution,
};
pub use tolerances::Tolerances;
