use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    xpoly_cli::configure_threads();
    let code = xpoly_cli::run(std::env::args_os(), &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code)
}
