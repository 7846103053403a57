use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "ternary",
    version,
    about = "Verification campaigns for ternary sums over dense prime sets"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// key=value file mirroring the flags; flags on the command line win
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Append the report here instead of printing it
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Jsonl,
    Csv,
    Human,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Constructive,
    Brute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CorollaryModeArg {
    Single,
    Exhaustive,
    Random,
    Adversarial,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check one instance of the three-sequence inequality
    SeqCheck {
        #[arg(long)]
        file: PathBuf,
    },
    /// Search for sequences violating the average conclusion
    SeqSearch {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        steps: u64,
        #[arg(long, default_value_t = 8)]
        restarts: u32,
    },
    /// Evaluate every intermediate inequality of the proof on one instance
    SeqCertificate {
        #[arg(long)]
        file: PathBuf,
    },
    /// Sumset of two or three residue sets, given as comma lists
    Sumset {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        c: Option<String>,
    },
    /// Coverage of Z_m by triple sumsets of large unit subsets
    Corollary14 {
        #[arg(long)]
        m: u64,
        #[arg(long, value_enum)]
        mode: CorollaryModeArg,
        /// Random trials or local-search budget
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        c: Option<String>,
        /// Report coverage even below the cardinality thresholds
        #[arg(long)]
        diagnostic: bool,
    },
    /// The density-5/8 residue set mod 15 whose triple sumset misses 2
    Counterexample15,
    /// h-positive witnesses for m coprime to 30
    Lemma31 {
        #[command(flatten)]
        fs: FunctionFiles,
        #[command(flatten)]
        thresholds: Thresholds,
        /// Target residue; all residues when omitted
        #[arg(long)]
        x: Option<u64>,
        #[arg(long, value_enum, default_value_t = Mode::Constructive)]
        mode: Mode,
        /// Require every prime factor to be at least 11
        #[arg(long)]
        strict_base: bool,
    },
    /// Witnesses over Z_15 under the unit-sum condition
    Lemma32 {
        #[command(flatten)]
        fs: FunctionFiles,
        /// Target residue; all residues when omitted
        #[arg(long)]
        v: Option<u64>,
    },
    /// Witnesses with positive values and value sum above 3/2
    Theorem13 {
        #[command(flatten)]
        fs: FunctionFiles,
        #[command(flatten)]
        thresholds: Thresholds,
        #[arg(long)]
        x: Option<u64>,
        #[arg(long, value_enum, default_value_t = Mode::Constructive)]
        mode: Mode,
    },
    /// Exact ordered counts of p1 + p2 + p3 = n
    GoldbachCount {
        #[arg(long, conflicts_with = "range")]
        n: Option<u64>,
        /// Odd bounds as n0:n1
        #[arg(long)]
        range: Option<String>,
        #[command(flatten)]
        specs: SubsetSpecs,
        #[arg(long, default_value = "convolution")]
        method: String,
        #[arg(long, default_value_t = ternary_core::goldbach_counting::DEFAULT_SIEVE_CAP)]
        sieve_cap: u64,
    },
    /// Residue-class weights modulo the primorial below z
    Wtrick {
        #[arg(long)]
        z: u64,
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        specs: SubsetSpecs,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        eta: String,
        #[arg(long, default_value_t = ternary_core::goldbach_counting::DEFAULT_SIEVE_CAP)]
        sieve_cap: u64,
    },
    /// Fourier transform of a real vector of prime length
    Spectrum {
        /// Whitespace-separated values
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value_t = 2.5)]
        q: f64,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::SeqCheck { .. } => "seq-check",
            Command::SeqSearch { .. } => "seq-search",
            Command::SeqCertificate { .. } => "seq-certificate",
            Command::Sumset { .. } => "sumset",
            Command::Corollary14 { .. } => "corollary14",
            Command::Counterexample15 => "counterexample15",
            Command::Lemma31 { .. } => "lemma31",
            Command::Lemma32 { .. } => "lemma32",
            Command::Theorem13 { .. } => "theorem13",
            Command::GoldbachCount { .. } => "goldbach-count",
            Command::Wtrick { .. } => "wtrick",
            Command::Spectrum { .. } => "spectrum",
        }
    }
}

#[derive(Debug, Args)]
pub struct FunctionFiles {
    #[arg(long)]
    pub f1: PathBuf,
    #[arg(long)]
    pub f2: PathBuf,
    #[arg(long)]
    pub f3: PathBuf,
}

#[derive(Debug, Args)]
pub struct Thresholds {
    #[arg(long)]
    pub delta: String,
    #[arg(long)]
    pub eta: String,
}

#[derive(Debug, Args)]
pub struct SubsetSpecs {
    #[arg(long, default_value = "all")]
    pub p1: String,
    #[arg(long, default_value = "all")]
    pub p2: String,
    #[arg(long, default_value = "all")]
    pub p3: String,
}
