use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub const DEFAULT_SEED: u64 = 7003;

#[derive(Debug, Parser)]
#[command(name = "prigid", version, about = "Exact checks for p-rigid fields and their Galois groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,

    /// The prime p.
    #[arg(long, global = true, default_value_t = 3)]
    pub p: u64,

    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Target precision (powers of t) for series output.
    #[arg(long, global = true)]
    pub prec: Option<i64>,

    /// Resource bound: group order, tower level or ramification, per command.
    #[arg(long, global = true)]
    pub bound: Option<u64>,

    /// Write the JSON report to this file instead of stdout.
    #[arg(long, global = true, value_name = "OUT")]
    pub json: Option<PathBuf>,

    /// Replay the checks recorded in a saved report.
    #[arg(long, value_name = "IN")]
    pub reverify: Option<PathBuf>,

    /// Run a reduced acceptance suite.
    #[arg(long, global = true)]
    pub quick: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Finite p-group computations.
    Group {
        #[arg(value_enum)]
        action: GroupAction,
        /// `theta(p,k,i,m)`, `ut(n,p,e)` or `table:<path>`.
        descriptor: String,
        /// Series length or number of tower levels.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = SeriesArg::LowerP)]
        kind: SeriesArg,
    },
    /// Symbols and rigidity of a field.
    Rigidity {
        #[arg(value_enum)]
        action: RigidityAction,
        /// `gf(q)`, `laurent(q[,prec])` or `ratfunc(q)`.
        field: String,
        #[arg(long)]
        element: Option<String>,
        /// Semicolon separated basis of the class group (default: the canonical one).
        #[arg(long, value_delimiter = ';')]
        basis: Vec<String>,
        #[arg(long, default_value_t = 1)]
        depth: u32,
    },
    /// A level of the Kummer tower and its Galois group.
    Tower {
        field: String,
        #[arg(long, default_value_t = 2)]
        n: u32,
    },
    /// The Hilbert 90 witness in the bicyclic algebra.
    Witness { field: String },
    /// Puiseux roots of a polynomial over a Laurent field.
    Solve {
        field: String,
        #[arg(long)]
        poly: String,
    },
    /// Run the acceptance suite.
    Accept {
        /// Reproduce the run recorded in this seed file.
        #[arg(long)]
        seed_file: Option<PathBuf>,
        /// Record this run's seed and report digest.
        #[arg(long)]
        write_seed_file: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GroupAction {
    Series,
    Dimension,
    Powerful,
    #[value(name = "theoremA")]
    TheoremA,
    Jmodule,
    Maximal,
    Tower,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeriesArg {
    LowerP,
    LowerCentral,
    Frattini,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RigidityAction {
    Check,
    Element,
    Hereditary,
    Steinberg,
}

/// The name clap uses on the command line.
pub fn value_name<T: ValueEnum>(v: T) -> String {
    v.to_possible_value().expect("no skipped variants").get_name().to_string()
}
