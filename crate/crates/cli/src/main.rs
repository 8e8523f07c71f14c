use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use stratcx_cli::{configure_threads, execute, Cli, CliError, EXIT_USAGE};

fn run() -> Result<u8, CliError> {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return Ok(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    configure_threads()?;
    let outcome = execute(&cli)?;
    match &cli.output {
        Some(path) => {
            std::fs::write(path, &outcome.text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?
        }
        None => std::io::stdout().write_all(outcome.text.as_bytes()).map_err(|e| CliError::Io(e.to_string()))?,
    }
    for line in &outcome.diagnostics {
        eprintln!("{line}");
    }
    Ok(outcome.code)
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
