use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(mlhpc::cli::run(std::env::args()) as u8)
}
