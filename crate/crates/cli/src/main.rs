//! `apw`: check, classify and transform finite structures with apartness.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use apartness::io::{run_command, Command, Invocation};
use apartness::Error;
use clap::{Parser, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CommandArg {
    Check,
    Classify,
    Quotient,
    Isomorphism,
    Cayley,
    Enumerate,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

/// Verify finite sets and semigroups with apartness.
///
/// Exit status: 0 when every check passed, 1 when a check, axiom or
/// precondition failed, 2 on usage or input errors.
#[derive(Debug, Parser)]
#[command(name = "apw", version)]
struct Cli {
    #[arg(value_enum)]
    command: CommandArg,
    /// Structure document (JSON, "format": 1).
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Emitted document for quotient, isomorphism and cayley; the report
    /// itself for every other command.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Worker threads for verify and enumerate (0: one per core).
    #[arg(long, value_name = "N", default_value_t = 0)]
    workers: usize,
    /// Largest carrier for verify and for searches without an input.
    #[arg(long, value_name = "N")]
    max_size: Option<usize>,
    #[arg(long, value_name = "NAME")]
    subset: Option<String>,
    #[arg(long, value_name = "NAME")]
    relation: Option<String>,
    #[arg(long, value_name = "NAME")]
    epsilon: Option<String>,
    #[arg(long, value_name = "NAME")]
    kappa: Option<String>,
    /// Mapping document for isomorphism.
    #[arg(long, value_name = "FILE")]
    map: Option<PathBuf>,
    /// apartness, relation, subset or semigroup.
    #[arg(long, value_name = "KIND")]
    kind: Option<String>,
    /// Conjunction of atoms such as `sd & !qd`, or `HYP => CONC`.
    #[arg(long, value_name = "ATOMS")]
    filter: Option<String>,
}

fn command(c: CommandArg) -> Command {
    match c {
        CommandArg::Check => Command::Check,
        CommandArg::Classify => Command::Classify,
        CommandArg::Quotient => Command::Quotient,
        CommandArg::Isomorphism => Command::Isomorphism,
        CommandArg::Cayley => Command::Cayley,
        CommandArg::Enumerate => Command::Enumerate,
        CommandArg::Verify => Command::Verify,
    }
}

fn write(path: &PathBuf, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn run(cli: Cli) -> Result<i32, Error> {
    let inv = Invocation {
        command: command(cli.command),
        input: cli.input,
        subset: cli.subset,
        relation: cli.relation,
        epsilon: cli.epsilon,
        kappa: cli.kappa,
        map: cli.map,
        kind: cli.kind,
        filter: cli.filter,
        max_size: cli.max_size,
        workers: cli.workers,
        out: cli.out.clone(),
    };
    let start = Instant::now();
    let outcome = run_command(&inv)?;
    if inv.command == Command::Verify {
        eprintln!("elapsed: {:.2} s", start.elapsed().as_secs_f64());
    }
    let rendered = match cli.format {
        Format::Text => outcome.report.to_text(),
        Format::Machine => outcome.report.to_machine(),
    };
    match (&cli.out, &outcome.emitted) {
        (Some(path), Some(doc)) => {
            write(path, &doc.to_json())?;
            print!("{rendered}");
        }
        (Some(path), None) => write(path, &rendered)?,
        (None, _) => print!("{rendered}"),
    }
    Ok(outcome.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
