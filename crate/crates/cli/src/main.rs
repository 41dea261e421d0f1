use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use polyfactor_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = match run(cli.command, &cli.config) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let written = match &cli.config.out {
        Some(path) => std::fs::write(path, &output.text),
        None => std::io::stdout().write_all(output.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(output.status as u8)
}
