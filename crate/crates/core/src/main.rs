use std::process::ExitCode;

use clap::Parser;

use cbrauer::cli::{error_report, execute, exit_code, render, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = execute(&cli).and_then(|(outcome, output)| {
        let text = render(&outcome, output.format)?;
        match &output.out {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| cbrauer::Error::Input(format!("cannot write {}: {e}", path.display())))?,
            None => print!("{text}"),
        }
        Ok(outcome.code)
    });
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprint!("{}", error_report(&e));
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
