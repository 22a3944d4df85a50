use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use ehrhart_cli::{run, Cli, EXIT_INVALID_INPUT};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let code = match run(&cli, &mut out, &mut err) {
        Ok(outcome) => outcome.exit_code(),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID_INPUT
        }
    };
    let _ = out.flush();
    ExitCode::from(code as u8)
}
