use std::process::ExitCode;

fn main() -> ExitCode {
    gyrotab::cli::run_from(std::env::args())
}
