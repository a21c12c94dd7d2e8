use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cind::json::{JsonOutcome, JsonTable};
use cind::{error_exit_code, exit_code, gallery, prune, render_outcome, run_text, Outcome, ScriptError};
use cind_core::{Bounds, DEFAULT_BUDGET};

#[derive(Parser)]
#[command(name = "cind", version, about = "Check measurings, transports and C-initiality on finite instances")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct RunFlags {
    /// Print the reports as JSON.
    #[arg(long)]
    json: bool,
    /// Step budget per check; overrides CIND_BUDGET.
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks of a script.
    Check {
        file: PathBuf,
        #[command(flatten)]
        flags: RunFlags,
    },
    /// Run a gallery script, or list the gallery when no name is given.
    Gallery {
        name: Option<String>,
        /// Print the script instead of running it.
        #[arg(long)]
        print: bool,
        #[command(flatten)]
        flags: RunFlags,
    },
    /// Print a declared measuring as a JSON table.
    Table {
        file: PathBuf,
        measuring: String,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Small demonstrations.
    Demo {
        #[command(subcommand)]
        demo: Demo,
    },
}

#[derive(Subcommand)]
enum Demo {
    /// Prune a tree along a shape: labels add, empty wins.
    Prune {
        #[arg(long)]
        shape: String,
        #[arg(long)]
        tree: String,
    },
}

fn usage(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {}", message);
    ExitCode::from(2)
}

fn bounds(flag: Option<u64>) -> Result<Bounds, String> {
    let budget = match flag {
        Some(b) => b,
        None => match std::env::var("CIND_BUDGET") {
            Ok(v) => v.trim().parse().map_err(|_| format!("CIND_BUDGET is not a number: {:?}", v))?,
            Err(_) => DEFAULT_BUDGET,
        },
    };
    Ok(Bounds::with_budget(budget))
}

fn script_error(origin: &str, e: &ScriptError) -> ExitCode {
    eprintln!("{}:{}", origin, e);
    ExitCode::from(error_exit_code(e) as u8)
}

fn report(outcome: &Outcome, json: bool) -> ExitCode {
    if json {
        let j = JsonOutcome::from(outcome);
        println!("{}", serde_json::to_string_pretty(&j).expect("reports serialize"));
    } else {
        print!("{}", render_outcome(outcome));
    }
    ExitCode::from(exit_code(outcome.status()) as u8)
}

fn run_script(origin: &str, text: &str, flags: &RunFlags) -> ExitCode {
    let b = match bounds(flags.budget) {
        Ok(b) => b,
        Err(e) => return usage(e),
    };
    match run_text(text, &b) {
        Ok(outcome) => report(&outcome, flags.json),
        Err(e) => script_error(origin, &e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Check { file, flags } => match std::fs::read_to_string(&file) {
            Ok(text) => run_script(&file.display().to_string(), &text, &flags),
            Err(e) => usage(format!("{}: {}", file.display(), e)),
        },
        Command::Gallery { name: None, .. } => {
            for n in gallery::names() {
                println!("{}", n);
            }
            ExitCode::SUCCESS
        }
        Command::Gallery { name: Some(name), print, flags } => match gallery::get(&name) {
            None => usage(format!("no gallery script named {}; try `cind gallery`", name)),
            Some(text) if print => {
                print!("{}", text);
                ExitCode::SUCCESS
            }
            Some(text) => run_script(&name, text, &flags),
        },
        Command::Table { file, measuring, budget } => {
            let b = match bounds(budget) {
                Ok(b) => b,
                Err(e) => return usage(e),
            };
            let text = match std::fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => return usage(format!("{}: {}", file.display(), e)),
            };
            let outcome = match run_text(&text, &b) {
                Ok(o) => o,
                Err(e) => return script_error(&file.display().to_string(), &e),
            };
            let Some(m) = outcome.measuring(&measuring) else {
                return usage(format!("{} declares no measuring named {}", file.display(), measuring));
            };
            match JsonTable::new(m, &b) {
                Ok(t) => {
                    println!("{}", serde_json::to_string_pretty(&t).expect("tables serialize"));
                    ExitCode::SUCCESS
                }
                Err(e) => usage(e),
            }
        }
        Command::Demo { demo: Demo::Prune { shape, tree } } => match prune::demo_prune(&shape, &tree) {
            Ok(t) => {
                println!("{}", t);
                ExitCode::SUCCESS
            }
            Err(e) => script_error("prune", &e),
        },
    }
}
