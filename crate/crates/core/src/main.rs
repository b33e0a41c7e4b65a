use std::process::ExitCode;

fn main() -> ExitCode {
    curved_lattice::cli::main_with_args(std::env::args_os())
}
