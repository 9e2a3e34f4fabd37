use std::fs;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::Parser;

use prigid_cli::cli::Cli;
use prigid_cli::{commands, exit_code, reverify, EXIT_PASS, EXIT_VERIFICATION};

fn run(cli: &Cli) -> Result<u8> {
    let outcome = match (&cli.reverify, &cli.command) {
        (Some(_), Some(_)) => bail!(prigid::Error::Usage("--reverify takes no subcommand".into())),
        (Some(path), None) => reverify::reverify(path)?,
        (None, _) => commands::run(cli)?,
    };
    for note in &outcome.report.notes {
        eprintln!("{}", note.line());
    }
    let json = outcome.report.to_json();
    match &cli.json {
        Some(path) => fs::write(path, json).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{json}"),
    }
    Ok(if outcome.pass { EXIT_PASS } else { EXIT_VERIFICATION })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
