use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(lca3_cli::run(std::env::args_os()))
}
