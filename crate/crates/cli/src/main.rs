mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;
use hopf_modes::Execution;

use args::{Cli, Command, ModesAction};
use commands::CliError;

fn run(cli: Cli) -> Result<(), CliError> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    match &cli.command {
        Command::Modes {
            action: ModesAction::List { l, output },
        } => commands::modes_list(*l, output),
        Command::Eval(a) => commands::eval(a),
        Command::Gram(a) => commands::gram(a, exec),
        Command::Verify(a) => commands::verify(a, exec),
        Command::Dims(a) => commands::dims(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        // help and version exit 0, usage errors exit 2
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
