use std::process::ExitCode;

fn main() -> ExitCode {
    skein::cli::run(std::env::args_os())
}
