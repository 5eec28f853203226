use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(reservo::run(std::env::args_os().collect()))
}
