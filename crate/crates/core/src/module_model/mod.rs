//! Hilbert C*-modules over C[0,1] sampled on a uniform grid.

mod demos;
mod element;
mod grid;
mod localize;
mod operator;
mod preimage;

pub use demos::{demo, Demo, DemoCheck, DemoReport, DEFAULT_GRID, DEMO_STATES, MAJORIZATION_SCALARS};
pub use element::{module_inner, ModuleElement};
pub use grid::GridFunction;
pub use localize::{
    l2_operators, local_factorization, localize, localize_op, thl2_decompose, Decomposition, PureState,
};
pub use operator::{op_adjoint, op_apply, op_compose, op_psd_gap, ModuleOperator};
pub use preimage::{divide_on_grid, in_ideal_m, multiplier_preimage, Preimage, STABILITY_FACTOR};
