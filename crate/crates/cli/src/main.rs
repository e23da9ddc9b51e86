use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let code = mzlab_cli::run(std::env::args_os().collect(), &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code as u8)
}
