use std::process::ExitCode;

use clap::Parser;
use pipow::{config::WORK_CEILING_ENV, emit, execute, exit, Cli, RunConfig};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                exit::INVALID
            } else {
                exit::SUCCESS
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let env_ceiling = std::env::var(WORK_CEILING_ENV).ok();
    let config = match RunConfig::from_cli(cli, env_ceiling.as_deref()) {
        Ok(config) => config,
        Err(e) => {
            eprintln!("pipow: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let result = execute(&config).and_then(|outcome| {
        emit(&config, &outcome)?;
        Ok(outcome.exit_code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("pipow: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
