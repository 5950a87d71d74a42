use std::path::{Path, PathBuf};

use opeq_core::module_model::{demo, Demo};
use opeq_core::{
    axb_reduced_solve, congruence_solve, douglas_reduced_solve, majorization_lambda, pt_conditions, pt_solve,
    range_inclusion, riccati_geomean, verify_solution, ComplexMatrix, Equation, OpError, PtVerdict,
    ReducedSolution, Tolerances,
};
use serde_json::json;
use thiserror::Error;

use crate::cli::{CheckKind, Command, DemoKind, Inputs, SolveKind};
use crate::matrix_file::{emit_matrix, read_matrix, MatrixFile, MatrixFileError};
use crate::report::{digest, Outcome, RunReport};
use crate::sweep::{self, run_sweep};

pub const TOL_ENV: &str = "OPEQ_TOL";

#[derive(Debug, Error)]
pub enum InputError {
    #[error(transparent)]
    File(#[from] MatrixFileError),
    #[error("missing required input --{0}")]
    Missing(&'static str),
    #[error("{0}")]
    Numeric(#[from] OpError),
    #[error("{TOL_ENV}: {0}")]
    Tolerance(String),
    #[error("--tol must be a positive finite number, got {0}")]
    BadTol(f64),
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// Tolerances from the environment override string, if any.
pub fn env_tolerances(value: Option<&str>) -> Result<Tolerances, InputError> {
    match value {
        None => Ok(Tolerances::default()),
        Some(s) => Tolerances::default().with_overrides(s).map_err(InputError::Tolerance),
    }
}

/// Executes a parsed command. Input problems come back as `Err`; unsolvable
/// instances are ordinary reports.
pub fn execute(command: &Command, tol: Tolerances) -> Result<RunReport, InputError> {
    match command {
        Command::Solve {
            equation,
            inputs,
            tol: t,
            out,
        } => {
            let tol = with_solve_tol(tol, *t)?;
            let report = solve(*equation, inputs, &tol)?;
            if let (Some(path), Some(sol)) = (out, &report.solution) {
                let m = sol.to_matrix("solution")?;
                std::fs::write(path, emit_matrix(&m) + "\n").map_err(|source| InputError::Write {
                    path: path.clone(),
                    source,
                })?;
            }
            Ok(report)
        }
        Command::Check { check: c, inputs, tol: t } => check(*c, inputs, &with_solve_tol(tol, *t)?),
        Command::Demo { which, grid } => run_demo(*which, *grid, &tol),
        Command::Sweep {
            seed,
            trials,
            max_dim,
        } => Ok(run_sweep_report(*seed, *trials as usize, *max_dim as usize, &tol)),
    }
}

fn with_solve_tol(mut tol: Tolerances, t: Option<f64>) -> Result<Tolerances, InputError> {
    if let Some(t) = t {
        if !(t.is_finite() && t > 0.0) {
            return Err(InputError::BadTol(t));
        }
        tol.solve = t;
    }
    Ok(tol)
}

struct Loader<'a> {
    inputs: &'a Inputs,
    report: RunReport,
}

impl<'a> Loader<'a> {
    fn new(command: String, inputs: &'a Inputs) -> Self {
        Self {
            inputs,
            report: RunReport::new(command),
        }
    }

    fn load(&mut self, name: &'static str) -> Result<ComplexMatrix, InputError> {
        let path: Option<&Path> = match name {
            "A" => self.inputs.a.as_deref(),
            "B" => self.inputs.b.as_deref(),
            "C" => self.inputs.c.as_deref(),
            "K" => self.inputs.k.as_deref(),
            "H" => self.inputs.h.as_deref(),
            _ => unreachable!("unknown input {name}"),
        };
        let path = path.ok_or(InputError::Missing(name))?;
        let (m, bytes) = read_matrix(path)?;
        self.report.inputs.insert(name.to_string(), digest(&bytes));
        Ok(m)
    }
}

fn reduced_report(mut report: RunReport, name: &str, rs: ReducedSolution) -> RunReport {
    report.outcome = Outcome::from_bool(rs.solved);
    report.residuals.insert(name.to_string(), rs.residual);
    report.conditions = rs.conditions;
    if rs.solved {
        report.solution = Some(MatrixFile::from(&rs.solution));
    } else {
        report.details = json!({ "candidate": MatrixFile::from(&rs.solution) });
    }
    report
}

fn solve(kind: SolveKind, inputs: &Inputs, tol: &Tolerances) -> Result<RunReport, InputError> {
    let command = format!("solve {}", kind_name(kind));
    let mut l = Loader::new(command, inputs);
    Ok(match kind {
        SolveKind::Douglas => {
            let (a, b) = (l.load("A")?, l.load("B")?);
            reduced_report(l.report, "AX = B", douglas_reduced_solve(&a, &b, tol)?)
        }
        SolveKind::Axb => {
            let (a, b, c) = (l.load("A")?, l.load("B")?, l.load("C")?);
            reduced_report(l.report, "AXB = C", axb_reduced_solve(&a, &b, &c, tol)?)
        }
        SolveKind::Congruence => {
            let (a, c) = (l.load("A")?, l.load("C")?);
            reduced_report(l.report, "AXA* = C", congruence_solve(&a, &c, tol)?)
        }
        SolveKind::Pt => {
            let (h, k) = (l.load("H")?, l.load("K")?);
            let pt = pt_solve(&h, &k, tol)?;
            let mut r = l.report;
            r.outcome = Outcome::from_bool(pt.verdict == PtVerdict::Solved);
            if let Some(res) = pt.residual {
                r.residuals.insert("XHX = K".into(), res);
            }
            r.details = json!({
                "verdict": pt.verdict,
                "a_min": pt.a_min,
                "cond_ii": pt.cond_ii,
                "cond_iii": pt.cond_iii,
                "cond_iv": pt.cond_iv,
            });
            match (&pt.solution, pt.verdict) {
                (Some(x), PtVerdict::Solved) => r.solution = Some(MatrixFile::from(x)),
                (Some(x), _) => r.details["candidate"] = json!(MatrixFile::from(x)),
                (None, _) => {}
            }
            r.conditions = pt.conditions;
            r
        }
        SolveKind::Riccati => {
            let (a, b) = (l.load("A")?, l.load("B")?);
            let g = riccati_geomean(&a, &b, tol)?;
            let res = verify_solution(Equation::Riccati { a: &a, b: &b }, &g)?;
            let mut r = l.report;
            r.outcome = Outcome::from_bool(res <= tol.solve);
            r.residuals.insert("XA⁻¹X = B".into(), res);
            if res <= tol.solve {
                r.solution = Some(MatrixFile::from(&g));
            } else {
                r.details = json!({ "candidate": MatrixFile::from(&g) });
            }
            r
        }
    })
}

fn check(kind: CheckKind, inputs: &Inputs, tol: &Tolerances) -> Result<RunReport, InputError> {
    let name = match kind {
        CheckKind::Range => "range",
        CheckKind::Douglas => "douglas",
        CheckKind::PtConditions => "pt-conditions",
    };
    let mut l = Loader::new(format!("check {name}"), inputs);
    Ok(match kind {
        CheckKind::Range => {
            let (a, b) = (l.load("A")?, l.load("B")?);
            let inc = range_inclusion(&b, &a, tol.solve)?.named("R(B) ⊆ R(A)");
            let mut r = l.report;
            r.outcome = Outcome::from_bool(inc.holds);
            r.residuals.insert("range".into(), inc.witness);
            r.conditions = vec![inc];
            r
        }
        CheckKind::Douglas => {
            let (a, b) = (l.load("A")?, l.load("B")?);
            let inc = range_inclusion(&b, &a, tol.solve)?.named("R(B) ⊆ R(A)");
            let lambda = majorization_lambda(&b, &a, tol)?;
            let major = opeq_core::conditions::majorization_report(&b, &a, tol)?;
            let mut r = l.report;
            r.outcome = Outcome::from_bool(inc.holds && lambda.is_some());
            r.residuals.insert("range".into(), inc.witness);
            r.details = json!({ "lambda": lambda });
            r.conditions = vec![inc, major];
            r
        }
        CheckKind::PtConditions => {
            let (h, k) = (l.load("H")?, l.load("K")?);
            let c = pt_conditions(&h, &k, tol)?;
            let mut r = l.report;
            r.outcome = Outcome::from_bool(c.cond_ii() && c.iii.holds && c.iv.holds);
            r.details = json!({ "cond_ii": c.cond_ii(), "cond_iii": c.iii.holds, "cond_iv": c.iv.holds });
            r.conditions = c.into_list();
            r
        }
    })
}

fn kind_name(kind: SolveKind) -> &'static str {
    match kind {
        SolveKind::Douglas => "douglas",
        SolveKind::Axb => "axb",
        SolveKind::Congruence => "congruence",
        SolveKind::Pt => "pt",
        SolveKind::Riccati => "riccati",
    }
}

fn run_demo(which: DemoKind, grid: usize, tol: &Tolerances) -> Result<RunReport, InputError> {
    let (which, name) = match which {
        DemoKind::Ex1 => (Demo::Ex1, "ex1"),
        DemoKind::Ex2 => (Demo::Ex2, "ex2"),
        DemoKind::L2 => (Demo::L2, "l2"),
    };
    let d = demo(which, grid, tol)?;
    let mut r = RunReport::new(format!("demo {name}"));
    r.outcome = Outcome::from_bool(d.passed);
    for c in &d.checks {
        r.residuals.insert(c.name.clone(), c.value);
    }
    r.details = serde_json::to_value(&d).expect("demo report serializes");
    Ok(r)
}

pub fn run_sweep_report(seed: u64, trials: usize, max_dim: usize, tol: &Tolerances) -> RunReport {
    let suites = run_sweep(seed, trials, max_dim, tol);
    let mut r = RunReport::new("sweep");
    r.seed = Some(seed);
    r.outcome = Outcome::from_bool(suites.iter().all(|s| s.ok()));
    for s in &suites {
        for (name, m) in &s.metrics {
            r.residuals.insert(format!("{}: {name}", s.suite.name()), m.worst);
        }
    }
    r.conditions = sweep::conditions(&suites);
    r.details = json!({
        "trials": trials,
        "max_dim": max_dim,
        "prng": "ChaCha8, stream (suite << 32 | trial) of seed_from_u64(seed)",
        "suites": suites,
    });
    r
}
