use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdout = io::stdout();
    let mut lock = io::BufWriter::new(stdout.lock());
    let code = pcore_cli::main_with_args(std::env::args_os(), &mut lock);
    if lock.flush().is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
