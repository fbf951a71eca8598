//! Command-line front end for the torsion pair workbench.
//!
//! Every command writes a deterministic artifact to stdout (or `--output`);
//! exit status 2 flags malformed input, 3 a refused over-budget scan, and 4
//! a falsified identity, printed together with its counterexample.

mod cache;
mod commands;
mod config;
mod render;
mod suites;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use quivertors::error::{Error, Result};
use quivertors::torsops::EnumMethod;

use commands::Outcome;
use config::{Builtin, Config, Format};

#[derive(Parser)]
#[command(name = "quivertors", version, about = "Torsion pairs, wide subcategories, and tame quiver catalogs over a prime field")]
struct Cli {
    /// Builtin quiver family: a2, a3, d4, kronecker, tube-<r>.
    #[arg(long, global = true, default_value = "a2")]
    builtin: String,
    /// Quiver file (JSON vertices/arrows), overriding --builtin.
    #[arg(long, global = true)]
    quiver: Option<PathBuf>,
    /// Field characteristic (env QUIVERTORS_PRIME, default 5).
    #[arg(long, global = true)]
    prime: Option<u64>,
    /// Catalog bound: largest symbol index (kronecker) or regular length (tube).
    #[arg(long, global = true)]
    bound: Option<usize>,
    /// Morphism-combination cap for filtration scans (env QUIVERTORS_BUDGET_HOM).
    #[arg(long, global = true)]
    budget_hom: Option<u64>,
    /// Candidate-subset cap for exhaustive scans (env QUIVERTORS_BUDGET_SCAN).
    #[arg(long, global = true)]
    budget_scan: Option<u64>,
    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Artifact format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Directory for cached universe catalogs.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Regenerate this command's golden file (env QUIVERTORS_GOLDEN_DIR).
    #[arg(long, global = true)]
    bless: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    ClosureScan,
    CoverWalk,
}

#[derive(Subcommand)]
enum Command {
    /// List the indecomposables of the configured catalog.
    Indecs,
    /// Enumerate the torsion classes of a representation-finite catalog.
    Tors {
        #[arg(long, value_enum, default_value_t = MethodArg::ClosureScan)]
        method: MethodArg,
    },
    /// Cover relation of the lattice of torsion classes, with brick labels.
    Hasse,
    /// Largest wide subcategory inside a torsion class.
    Alpha {
        /// Comma-separated member labels, or `none` / `all`.
        class: String,
    },
    /// Largest wide subcategory inside a torsion-free class.
    Beta {
        /// Comma-separated member labels, or `none` / `all`.
        class: String,
    },
    /// Enumerate wide subcategories with their generating semibricks.
    Wide,
    /// Kronecker catalogs and classification tables.
    Kronecker {
        #[command(subcommand)]
        sub: KroneckerCmd,
    },
    /// Classify the wide subcategories of a truncated tube.
    Tube { rank: usize, bound: usize },
    /// Run a named verification suite.
    Verify {
        /// One of: euler, ar-formula, wide-roundtrip, almost-simple,
        /// extremal, tau-report, tube-shape, kronecker-tables, ringel.
        suite: String,
    },
}

#[derive(Subcommand)]
enum KroneckerCmd {
    /// Cosilting classes up to the bound, flagged by wide generatability.
    Catalog {
        /// Shorthand for --format json.
        #[arg(long)]
        json: bool,
    },
    /// Check the classification tables against the truncated catalog.
    VerifyTheoremC {
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Build the brick attached to a residue set and check its sequences.
    Ringel {
        /// Comma-separated residues, e.g. 0,1,3; empty for the projective.
        #[arg(long, default_value = "")]
        set: String,
    },
}

fn resolve_config(cli: &Cli) -> Result<Config> {
    let (prime, budget_hom, budget_scan) =
        config::resolve(cli.prime, cli.budget_hom, cli.budget_scan)?;
    let builtin = match &cli.quiver {
        Some(path) => Builtin::File(path.clone()),
        None => Builtin::parse(&cli.builtin)?,
    };
    if cli.bless && cli.output.is_some() {
        return Err(Error::invalid("--bless and --output are mutually exclusive"));
    }
    Ok(Config {
        builtin,
        prime,
        bound: cli.bound,
        budget_hom,
        budget_scan,
        format: match cli.format {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
            FormatArg::Dot => Format::Dot,
        },
        output: cli.output.clone(),
        cache_dir: cli.cache_dir.clone(),
        bless: cli.bless,
    })
}

fn golden_dir() -> PathBuf {
    std::env::var(config::ENV_GOLDEN_DIR)
        .map(PathBuf::from)
        .unwrap_or_else(|_| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/golden")))
}

fn emit(cfg: &Config, outcome: Outcome) -> Result<()> {
    if cfg.bless {
        let Some(name) = outcome.golden else {
            return Err(Error::invalid("this command has no golden file to bless"));
        };
        let dir = golden_dir();
        std::fs::create_dir_all(&dir)
            .map_err(|e| Error::invalid(format!("cannot create golden dir: {e}")))?;
        let path = dir.join(&name);
        std::fs::write(&path, &outcome.artifact)
            .map_err(|e| Error::invalid(format!("cannot write {}: {e}", path.display())))?;
        println!("blessed {name}");
    } else if let Some(path) = &cfg.output {
        std::fs::write(path, &outcome.artifact)
            .map_err(|e| Error::invalid(format!("cannot write {}: {e}", path.display())))?;
    } else {
        print!("{}", outcome.artifact);
    }
    match outcome.violation {
        Some(v) => Err(v),
        None => Ok(()),
    }
}

fn execute(cli: Cli) -> Result<()> {
    let cfg = resolve_config(&cli)?;
    let outcome = match &cli.command {
        Command::Indecs => commands::indecs(&cfg)?,
        Command::Tors { method } => commands::tors(
            &cfg,
            match method {
                MethodArg::ClosureScan => EnumMethod::ClosureScan,
                MethodArg::CoverWalk => EnumMethod::CoverWalk,
            },
        )?,
        Command::Hasse => commands::hasse_cmd(&cfg)?,
        Command::Alpha { class } => commands::alpha(&cfg, class)?,
        Command::Beta { class } => commands::beta(&cfg, class)?,
        Command::Wide => commands::wide(&cfg)?,
        Command::Kronecker { sub } => match sub {
            KroneckerCmd::Catalog { json } => commands::kron_catalog(&cfg, *json)?,
            KroneckerCmd::VerifyTheoremC { bound } => {
                commands::kron_verify_theorem_c(&cfg, *bound)?
            }
            KroneckerCmd::Ringel { set } => commands::kron_ringel(&cfg, set)?,
        },
        Command::Tube { rank, bound } => commands::tube_cmd(&cfg, *rank, *bound)?,
        Command::Verify { suite } => suites::run_suite(&cfg, suite)?,
    };
    emit(&cfg, outcome)
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidInput(_) => 2,
        Error::BudgetExceeded(_) => 3,
        Error::InvariantViolation(_) => 4,
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = execute(cli) {
        eprintln!("{e}");
        std::process::exit(exit_code(&e));
    }
}
