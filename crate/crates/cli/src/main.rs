mod args;
mod commands;
mod error;
mod input;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use oddcolor::solver::SearchBudget;

use args::{Cli, Command};
use error::CliError;

const USAGE_EXIT: u8 = 2;

fn budget(cli: &Cli) -> Result<SearchBudget, CliError> {
    match (cli.budget_nodes, cli.budget_seconds) {
        (None, None) => Ok(SearchBudget::unlimited()),
        (nodes, secs) => SearchBudget::new(nodes.unwrap_or(u64::MAX), secs.map_or(f64::INFINITY, |s| s as f64))
            .map_err(CliError::core),
    }
}

fn run(cli: &Cli) -> commands::CmdResult {
    let budget = budget(cli)?;
    match &cli.command {
        Command::Gen(a) => commands::gen(a),
        Command::Chi(a) => commands::chi(a, &budget),
        Command::Decide(a) => commands::decide_cmd(a, &budget),
        Command::Verify(a) => commands::verify(a),
        Command::Faces(a) => commands::faces(a),
        Command::Discharge(a) => commands::discharge_cmd(a),
        Command::Reduce(a) => commands::reduce(a, &budget),
        Command::AuditLemma(a) => commands::audit_lemma(a, &budget),
        Command::CaseCoverage => commands::coverage(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let text = if cli.json {
                let mut s = serde_json::to_string_pretty(&outcome.json).expect("json value serializes");
                s.push('\n');
                s
            } else {
                outcome.human
            };
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(USAGE_EXIT);
            }
            ExitCode::from(outcome.exit as u8)
        }
        Err(e) => {
            eprintln!("oddcolor: error: {e}");
            ExitCode::from(USAGE_EXIT)
        }
    }
}
