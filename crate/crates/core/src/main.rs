use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let code = mubkit::cli::main_with_io(&mut io::stdin(), &mut io::stdout(), &mut io::stderr());
    ExitCode::from(code as u8)
}
