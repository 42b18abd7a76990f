mod args;
mod commands;
mod verify;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Group(a) => commands::group(&a),
        Command::Congruence(a) => commands::congruence(&a),
        Command::Cambrian(a) => commands::cambrian(&a),
        Command::Sortable(a) => commands::sortable(&a),
        Command::Fan(a) => commands::fan(&a),
        Command::Tamari(a) => commands::tamari(&a),
        Command::Verify(a) => verify::run(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
