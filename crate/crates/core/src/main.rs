use std::io::{self, Write};
use std::process::ExitCode;

use clap::error::ErrorKind;
use shatz::cli::{parse_args, run, EXIT_USAGE};

fn main() -> ExitCode {
    let inv = match parse_args(std::env::args_os()) {
        Ok(inv) => inv,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE as u8),
            };
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = run(&inv, &mut out, &mut io::stderr());
    let _ = out.flush();
    ExitCode::from(code as u8)
}
