use std::process::ExitCode;

fn main() -> ExitCode {
    grassmann::cli::run(std::env::args_os())
}
