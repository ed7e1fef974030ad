use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use periodpoly_cli::{run, sweep_summary, Cli, CliError};

fn write_output(cli: &Cli, text: &str) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(e.to_string());
    match &cli.output.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
        }
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(io),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|emission| {
        write_output(&cli, &emission.render(cli.output.format))?;
        if let Some(summary) = sweep_summary(&emission) {
            eprintln!("{summary}");
        }
        Ok(emission.failed)
    });
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => {
            eprintln!("periodpoly: an asserted check failed");
            ExitCode::from(3)
        }
        Err(err) => {
            eprintln!("periodpoly: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
