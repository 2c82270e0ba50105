use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(undirectify_cli::run(std::env::args_os()))
}
