use std::io::{self, Write};
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use xquery_cli::args::{Cli, Command};
use xquery_cli::{commands, CliError};

fn run(cli: Cli) -> anyhow::Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Query(a) => {
            let model = a.model.display().to_string();
            commands::query::run(&a, &mut out).with_context(|| format!("query on {model}"))?
        }
        Command::Translate(a) => commands::translate::run(&a, &mut out)?,
        Command::Gadget(a) => commands::gadget::run(&a, &mut out)?,
        Command::Map(a) => commands::map::run(&a, &mut out)?,
    }
    out.flush().ok();
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = e.downcast_ref::<CliError>().map_or(1, CliError::exit_code);
            ExitCode::from(code)
        }
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    matches!(e.downcast_ref::<CliError>(), Some(CliError::Io(io)) if io.kind() == io::ErrorKind::BrokenPipe)
}
