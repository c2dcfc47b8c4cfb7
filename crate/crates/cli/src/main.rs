mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::Outcome;

fn run(cli: &Cli) -> rtemvdr::Result<Outcome> {
    if let Some(workers) = cli.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
            .map_err(|e| rtemvdr::Error::InvalidArgument(e.to_string()))?;
    }
    match &cli.command {
        Command::SolveRte(a) => commands::solve_rte_cmd(&a.to_config()?),
        Command::Asymptotics(a) => commands::asymptotics_cmd(&a.to_config()?),
        Command::Clt(a) => commands::clt_cmd(&a.to_config()?),
        Command::Sweep(a) => commands::sweep_cmd(&a.to_config()?),
        Command::Render(a) => commands::render_cmd(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Clean) => ExitCode::SUCCESS,
        Ok(Outcome::CellErrors(count)) => {
            eprintln!("{count} cell(s) failed");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
