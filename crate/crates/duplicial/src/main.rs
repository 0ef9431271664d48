use std::process::ExitCode;

use duplicial::cli;

fn main() -> ExitCode {
    let status = cli::main_with(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr());
    ExitCode::from(status as u8)
}
