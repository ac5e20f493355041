//! `mplab`: matching preclusion workbench.

mod census;
mod docs;
mod input;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mplab_core::corpus::DEFAULT_SELECTOR;
use mplab_core::matching::DEFAULT_WITNESS_BUDGET;
use mplab_core::preclusion::{
    Backend, SolverOptions, DEFAULT_NODE_BUDGET, DEFAULT_SOLUTION_CAP, DEFAULT_SUBSET_BUDGET,
};
use mplab_core::structure::{StructureBudgets, DEFAULT_CUT_BUDGET, DEFAULT_ISO_BUDGET};

use input::InputArgs;

pub const EXIT_INPUT: u8 = 1;
pub const EXIT_INCOMPLETE: u8 = 2;
pub const EXIT_DISAGREE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "mplab", version, about = "Exact matching preclusion workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: GlobalArgs,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Preclusion backend: auto, enum, hitting or both.
    #[arg(long, global = true, default_value = "auto", value_parser = parse_backend)]
    pub backend: Backend,
    /// Subset tests allowed for the enumeration backend.
    #[arg(long, global = true, default_value_t = DEFAULT_SUBSET_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_subsets: u64,
    /// Search nodes allowed for the hitting-set backend.
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_nodes: u64,
    /// Search nodes allowed per isomorphism or orbit computation.
    #[arg(long, global = true, default_value_t = DEFAULT_ISO_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_iso: u64,
    /// Candidate Tutte sets examined per witness.
    #[arg(long, global = true, default_value_t = DEFAULT_WITNESS_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_witness: u64,
    /// Edge subsets or bipartitions examined when enumerating minimum cuts.
    #[arg(long, global = true, default_value_t = DEFAULT_CUT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_cuts: u64,
    /// Optimal sets listed per report; counts stay exact beyond it.
    #[arg(long, global = true, default_value_t = DEFAULT_SOLUTION_CAP)]
    pub solution_cap: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl GlobalArgs {
    pub fn solver(&self) -> SolverOptions {
        SolverOptions {
            backend: self.backend,
            subset_budget: self.budget_subsets,
            node_budget: self.budget_nodes,
            solution_cap: self.solution_cap,
            witness_budget: self.budget_witness,
            ..SolverOptions::default()
        }
    }

    pub fn structure(&self) -> StructureBudgets {
        StructureBudgets {
            cuts: self.budget_cuts,
            iso_nodes: self.budget_iso,
        }
    }
}

fn parse_backend(s: &str) -> Result<Backend, String> {
    s.parse::<Backend>().map_err(|e| e.to_string())
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a graph from a family spec.
    Generate {
        spec: String,
    },
    /// Structure, prediction and exact classification of one graph.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Theorem prediction and exception clauses only.
    Oracle {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Check a proposed preclusion set, e.g. "0-1,3-4".
    Witness {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        edges: String,
    },
    /// Cross-validate the theorem against exact search on a corpus.
    VerifyTheorem {
        /// `default`, `circulants:m<=N` or a comma-separated spec list.
        #[arg(long, default_value = DEFAULT_SELECTOR)]
        corpus: String,
    },
    /// Structure and prediction for every corpus graph, without exact search.
    Census {
        #[arg(long, default_value = DEFAULT_SELECTOR)]
        corpus: String,
    },
}

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: e.to_string(),
        }
    }
}

fn output(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn thread_pool() -> Result<(), Failure> {
    if let Ok(v) = std::env::var("MPLAB_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| Failure::from(format!("MPLAB_THREADS must be a positive integer, got {v:?}")))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, Failure> {
    thread_pool()?;
    let g = &cli.global;
    let mut out = output(&g.out)?;
    let code = match &cli.command {
        Command::Generate { spec } => docs::generate(spec, g, &mut out)?,
        Command::Analyze { input } => docs::analyze(&input.load()?, g, &mut out)?,
        Command::Oracle { input } => docs::oracle(&input.load()?, g, &mut out)?,
        Command::Witness { input, edges } => docs::witness(&input.load()?, edges, g, &mut out)?,
        Command::VerifyTheorem { corpus } => census::verify_theorem(corpus, g, &mut out)?,
        Command::Census { corpus } => census::census(corpus, g, &mut out)?,
    };
    out.flush()?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
