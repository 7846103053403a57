mod args;
mod commands;
mod config;
mod output;

use std::process::ExitCode;

use clap::{CommandFactory, FromArgMatches};

use args::Cli;
use output::{emit, Outcome};

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    match run(argv) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(argv: Vec<String>) -> anyhow::Result<u8> {
    let argv = config::merge_config(argv)?;
    let mut cmd = Cli::command().args_override_self(true);
    let names: Vec<String> = cmd
        .get_subcommands()
        .map(|s| s.get_name().to_string())
        .collect();
    for name in names {
        cmd = cmd.mut_subcommand(name, |s| s.args_override_self(true));
    }
    let matches = match cmd.try_get_matches_from_mut(&argv) {
        Ok(m) => m,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return Ok(code);
        }
    };
    let cli = Cli::from_arg_matches(&matches)?;
    config::configure_threads()?;
    let resolved = config::resolved_config(&matches, &cmd);

    match commands::dispatch(&cli) {
        Ok(outcome) => {
            emit(&cli.global, &resolved, &outcome)?;
            Ok(if outcome.failed { 1 } else { 0 })
        }
        Err(e) => match e.downcast_ref::<ternary_core::Error>() {
            Some(core) if core.is_certificate_failure() => {
                let outcome = Outcome::certificate_failure(cli.command.name(), core);
                emit(&cli.global, &resolved, &outcome)?;
                eprintln!("certificate failure: {core}");
                Ok(1)
            }
            _ => {
                eprintln!("error: {e:#}");
                Ok(2)
            }
        },
    }
}
