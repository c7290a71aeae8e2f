use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "btoep", version, about = "Branching-Toeplitz operators on rooted homogeneous trees")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Operator norm of Γ_q^(n)[f] by power iteration.
    Norm(NormArgs),
    /// Run the invariant suites and report pass/fail per check.
    Verify(VerifyArgs),
    /// Sample the determinantal point process of a [0,1]-valued symbol.
    Dpp(DppArgs),
    /// Branching and Toeplitz norms across (q, n).
    Table(TableArgs),
}

#[derive(Args, Debug)]
pub struct SymbolSource {
    /// Symbol as inline JSON, e.g. '{"coeffs":[[0,1,0]]}'.
    #[arg(long, conflicts_with = "symbol_file")]
    pub symbol: Option<String>,
    /// Path to a symbol JSON file.
    #[arg(long)]
    pub symbol_file: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Case {
    #[value(name = "A1")]
    A1,
    #[value(name = "A2")]
    A2,
    #[value(name = "A3")]
    A3,
}

#[derive(Args, Debug)]
pub struct NormArgs {
    #[command(flatten)]
    pub symbol: SymbolSource,
    #[arg(long)]
    pub q: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = btoep::spectral::DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, default_value_t = btoep::spectral::DEFAULT_MAX_ITER)]
    pub max_iter: usize,
    #[arg(long, default_value_t = btoep::spectral::DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 3)]
    pub q_max: usize,
    #[arg(long, default_value_t = 5)]
    pub n_max: usize,
    /// Only run the norm-equality suite for one symbol class.
    #[arg(long, value_enum)]
    pub case: Option<Case>,
    /// Random symbols per check (default 3, or 50 with --case).
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long, default_value_t = btoep::spectral::DEFAULT_SEED)]
    pub seed: u64,
    /// Perturb one entry of every dense operator (negative control).
    #[arg(long)]
    pub fuzz_entry: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct DppArgs {
    #[command(flatten)]
    pub symbol: SymbolSource,
    #[arg(long)]
    pub q: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = btoep::spectral::DEFAULT_SEED)]
    pub seed: u64,
    /// Directory receiving samples.jsonl and diagnostics.csv.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[command(flatten)]
    pub symbol: SymbolSource,
    #[arg(long, default_value_t = 8)]
    pub q_max: usize,
    /// Defaults to the deepest n with |B_n(T_q_max)| within the dense cap.
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}
