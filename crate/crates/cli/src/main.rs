use std::process::ExitCode;

fn main() -> ExitCode {
    let env = opeq_cli::tol_env();
    let code = opeq_cli::run(std::env::args_os(), env.as_deref(), &mut std::io::stdout(), &mut std::io::stderr());
    ExitCode::from(code as u8)
}
