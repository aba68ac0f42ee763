use std::process::ExitCode;

fn main() -> ExitCode {
    starmeans_cli::run(std::env::args_os())
}
