//! Library side of the `opeq` binary, exposed for integration tests.

pub mod cli;
pub mod commands;
pub mod matrix_file;
pub mod report;
pub mod sweep;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

use crate::cli::Cli;
use crate::commands::{env_tolerances, execute, TOL_ENV};
use crate::report::{Outcome, RunReport};

/// Parses `args`, runs the command and prints the report; returns the exit code.
pub fn run<I, T>(args: I, tol_env: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = env_tolerances(tol_env).and_then(|tol| execute(&cli.command, tol));
    match result {
        Ok(report) => {
            let _ = out.write_all(report.to_json().as_bytes());
            report.outcome.exit_code()
        }
        Err(e) => {
            let mut report = RunReport::new(command_name(&cli));
            report.outcome = Outcome::Error;
            report.details = serde_json::json!({ "error": e.to_string() });
            let _ = out.write_all(report.to_json().as_bytes());
            let _ = writeln!(err, "opeq: {e}");
            Outcome::Error.exit_code()
        }
    }
}

/// Value of the tolerance override variable, if set.
pub fn tol_env() -> Option<String> {
    std::env::var(TOL_ENV).ok()
}

fn command_name(cli: &Cli) -> String {
    use crate::cli::Command;
    let sub = |v: &dyn std::fmt::Debug| format!("{v:?}").to_lowercase();
    match &cli.command {
        Command::Solve { equation, .. } => format!("solve {}", sub(equation)),
        Command::Check { check, .. } => match check {
            cli::CheckKind::PtConditions => "check pt-conditions".to_string(),
            other => format!("check {}", sub(other)),
        },
        Command::Demo { which, .. } => format!("demo {}", sub(which)),
        Command::Sweep { .. } => "sweep".to_string(),
    }
}
