use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Solvers and solvability checks for dense operator equations.
#[derive(Debug, Parser)]
#[command(name = "opeq", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve an equation and report the reduced or positive solution.
    Solve {
        #[arg(value_enum)]
        equation: SolveKind,
        #[command(flatten)]
        inputs: Inputs,
        /// Residual tolerance (overrides OPEQ_TOL's `solve`).
        #[arg(long)]
        tol: Option<f64>,
        /// Also write the solution matrix here.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Evaluate solvability conditions without solving.
    Check {
        #[arg(value_enum)]
        check: CheckKind,
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Run one of the C[0,1] module examples.
    Demo {
        #[arg(value_enum)]
        which: DemoKind,
        /// Grid intervals, a power of two ≥ 16.
        #[arg(long, default_value_t = 1024)]
        grid: usize,
    },
    /// Seeded randomized property battery.
    Sweep {
        #[arg(long)]
        seed: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long = "max-dim", value_parser = clap::value_parser!(u64).range(2..=16))]
        max_dim: u64,
    },
}

#[derive(Debug, Args)]
pub struct Inputs {
    #[arg(long = "A", value_name = "FILE")]
    pub a: Option<PathBuf>,
    #[arg(long = "B", value_name = "FILE")]
    pub b: Option<PathBuf>,
    #[arg(long = "C", value_name = "FILE")]
    pub c: Option<PathBuf>,
    #[arg(long = "K", value_name = "FILE")]
    pub k: Option<PathBuf>,
    #[arg(long = "H", value_name = "FILE")]
    pub h: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolveKind {
    /// AX = B
    Douglas,
    /// AXB = C
    Axb,
    /// AXA* = C with X ≥ 0
    Congruence,
    /// XHX = K with X ≥ 0
    Pt,
    /// XA⁻¹X = B, the geometric mean A#B
    Riccati,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    /// R(B) ⊆ R(A)
    Range,
    /// R(B) ⊆ R(A) and BB* ≤ λAA*
    Douglas,
    /// conditions (ii) to (iv) for XHX = K
    PtConditions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DemoKind {
    Ex1,
    Ex2,
    L2,
}
