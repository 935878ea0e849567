use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(tamebar::cli::run(std::env::args()) as u8)
}
