use std::io::Write;
use std::process::ExitCode;

use alexlarge_cli::{run, serialize_report, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let config = match Cli::parse().into_config() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = run(&config);
    let bytes = serialize_report(&report, config.format);
    if std::io::stdout().write_all(&bytes).is_err() {
        return ExitCode::FAILURE;
    }
    if let Some(e) = &report.error {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
