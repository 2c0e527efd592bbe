use std::io::Write;
use std::process::ExitCode;

use adsmd_cli::{configure_threads, run, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("adsmd: {}", e.message);
        return ExitCode::from(e.code);
    }
    match run(&cli) {
        Ok(a) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(a.text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(a.code)
        }
        Err(e) => {
            eprintln!("adsmd: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
