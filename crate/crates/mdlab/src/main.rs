use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(mdlab::cli::run() as u8)
}
