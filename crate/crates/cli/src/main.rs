use std::io;
use std::process::ExitCode;

use clap::Parser;
use hyperspace_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    match run(&cli, &mut stdout.lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hyperspace: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
