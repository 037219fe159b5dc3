use std::process::ExitCode;

fn main() -> ExitCode {
    gradus::cli::main_with_args(std::env::args_os())
}
