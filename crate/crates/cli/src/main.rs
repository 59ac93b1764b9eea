use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = formal_cf_cli::run(std::env::args_os());
    let _ = io::stdout().lock().write_all(out.stdout.as_bytes());
    let _ = io::stderr().lock().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code)
}
