use std::io;
use std::process::ExitCode;

use belldecomp_cli::{run, ExperimentConfig};
use clap::Parser;

fn main() -> ExitCode {
    let cfg = ExperimentConfig::parse();
    let stdout = io::stdout();
    let stderr = io::stderr();
    match run(&cfg, &mut stdout.lock(), &mut stderr.lock()) {
        Ok(exit) => ExitCode::from(exit.code()),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit().code())
        }
    }
}
