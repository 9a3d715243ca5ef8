mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{Digests, Report};

#[derive(Parser, Debug)]
#[command(name = "invrel", version, about = "Orbital and weakly orbital invariant equivalence relations of finite group actions")]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Seed for randomized commands; overrides the seed in a budget file.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Largest subgroup (by order) whose subgroups are enumerated exhaustively.
    #[arg(long, global = true, value_name = "N")]
    pub max_subgroups: Option<usize>,
    /// Cap on the number of lattice members enumerated.
    #[arg(long, global = true, value_name = "N")]
    pub max_lattice: Option<usize>,
    /// Also write the report (or, for `catalog build`, the bundle) to this file.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Invariance, kernel group, orbitality and weak orbitality of a relation.
    Analyze {
        /// Action file (or a group file with --regular, or a bundle).
        action: PathBuf,
        /// Partition file, relation file, or bundle.
        partition: PathBuf,
        /// Read ACTION as a group and use its regular action.
        #[arg(long)]
        regular: bool,
    },
    /// Check agreeability, then evaluate the four conditions of a pseudo-closedness criterion.
    Verify {
        structure: PathBuf,
        partition: PathBuf,
        #[arg(long, value_enum)]
        theorem: TheoremArg,
    },
    /// Seeded search for relations whose pseudo-closedness properties come apart.
    Search { budget: PathBuf },
    /// Named example instances.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
    /// Maximal witness pairs of a weakly orbital relation.
    Witnesses {
        action: PathBuf,
        partition: PathBuf,
        #[arg(long)]
        regular: bool,
        /// Start from this witness pair instead of the decider's.
        #[arg(long, value_name = "FILE")]
        witness: Option<PathBuf>,
    },
    /// Separation of the classes by invariant pseudo-closed sets.
    Quotient { structure: PathBuf, partition: PathBuf },
}

#[derive(Subcommand, Debug)]
enum CatalogCommand {
    List,
    /// Build an instance; parameters are given as key=value.
    Build { name: String, params: Vec<String> },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TheoremArg {
    Orb,
    Worb,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut digests = Digests::default();
    let (name, outcome) = match &cli.command {
        Command::Analyze { action, partition, regular } => {
            ("analyze", commands::analyze(&cli.opts, &mut digests, action, partition, *regular))
        }
        Command::Verify { structure, partition, theorem } => {
            ("verify", commands::verify(&cli.opts, &mut digests, structure, partition, *theorem))
        }
        Command::Search { budget } => ("search", commands::search(&cli.opts, &mut digests, budget)),
        Command::Catalog { command: CatalogCommand::List } => ("catalog list", commands::catalog_list()),
        Command::Catalog { command: CatalogCommand::Build { name, params } } => {
            ("catalog build", commands::catalog_build(&cli.opts, name, params))
        }
        Command::Witnesses { action, partition, regular, witness } => (
            "witnesses",
            commands::witnesses(&cli.opts, &mut digests, action, partition, *regular, witness.as_deref()),
        ),
        Command::Quotient { structure, partition } => {
            ("quotient", commands::quotient(&cli.opts, &mut digests, structure, partition))
        }
    };
    let outcome = outcome.unwrap_or_else(commands::Outcome::from_error);
    let report = Report {
        command: name.to_string(),
        inputs: digests.into_entries(),
        results: outcome.results,
        seed: outcome.seed,
        runtime_ms: start.elapsed().as_millis() as u64,
    };
    for line in &outcome.summary {
        eprintln!("{line}");
    }
    let text = report.to_json();
    println!("{text}");
    let write_report = cli.opts.out.as_ref().filter(|_| !matches!(cli.command, Command::Catalog { .. }));
    if let Some(path) = write_report {
        if let Err(err) = std::fs::write(path, format!("{text}\n")) {
            eprintln!("error: cannot write {}: {err}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(outcome.status.code())
}
