use std::fs;
use std::process::ExitCode;

use clap::Parser;

mod commands;
mod config;
mod output;
mod routes;

use commands::Rendered;
use config::{Cli, Command, ConfigFile, RunConfig, UsageError};

fn dispatch(command: &Command, cfg: &RunConfig) -> Result<Rendered, UsageError> {
    match command {
        Command::Resist(_) => commands::resist(cfg),
        Command::Walk(_) => commands::walk(cfg),
        Command::Kirchhoff(_) => commands::kirchhoff(cfg),
        Command::Verify(_) => commands::verify(cfg),
        Command::Sweep(_) => commands::sweep(cfg),
    }
}

fn run(cli: &Cli) -> Result<Rendered, UsageError> {
    let file = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let cfg = RunConfig::resolve(&cli.command, &file)?;
    let rendered = dispatch(&cli.command, &cfg)?;
    match &cfg.output {
        Some(path) => fs::write(path, &rendered.body)
            .map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{}", rendered.body),
    }
    Ok(rendered)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(r) if r.report.all_pass() => ExitCode::SUCCESS,
        Ok(r) => {
            for c in r.report.failures() {
                eprintln!(
                    "check failed: {} (residual {:e}, tolerance {:e})",
                    c.name, c.residual, c.tolerance
                );
            }
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
