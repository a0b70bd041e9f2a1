mod commands;
mod http;
mod render;
mod source;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use logical_match::io::Region;
use logical_match::{Engine, Error};

/// Alignment-free sequence comparison by logical match.
#[derive(Debug, Parser)]
#[command(name = "logmatch", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Score one pattern against one text.
    Compare(CompareArgs),
    /// Score many patterns against one text.
    Matrix(MatrixArgs),
    /// Print the positional index of one sequence.
    Index(IndexArgs),
    /// Time index construction and counting on synthetic data.
    Bench(BenchArgs),
    /// Download a FASTA record by locus.
    Fetch(FetchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OnInvalid {
    Error,
    Skip,
}

#[derive(Debug, Args)]
pub struct EncodingArgs {
    /// Alphabet symbols in code order.
    #[arg(long, default_value = "ATGC")]
    pub alphabet: String,
    /// What to do with characters outside the alphabet.
    #[arg(long, value_enum, default_value_t = OnInvalid::Error)]
    pub on_invalid: OnInvalid,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Decimal places for non-integer values.
    #[arg(long, default_value_t = 4)]
    pub precision: usize,
}

#[derive(Debug, Args)]
pub struct EngineArgs {
    /// Counting engine: postings, bitplanes or naive.
    #[arg(long, default_value_t = Engine::Bitplanes)]
    pub engine: Engine,
    /// Run all engines and fail (exit 4) if they disagree.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Args)]
pub struct RegionArgs {
    /// 1-based inclusive region applied to text and patterns, e.g. 541-560.
    #[arg(long)]
    pub region: Option<Region>,
    /// Region for the text only; overrides --region.
    #[arg(long)]
    pub text_region: Option<Region>,
    /// Region for patterns only; overrides --region.
    #[arg(long)]
    pub pattern_region: Option<Region>,
}

impl RegionArgs {
    pub fn text(&self) -> Option<Region> {
        self.text_region.or(self.region)
    }

    pub fn pattern(&self) -> Option<Region> {
        self.pattern_region.or(self.region)
    }
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Text given inline.
    #[arg(long, conflicts_with_all = ["text", "text_fetch"])]
    pub text_seq: Option<String>,
    /// FASTA file holding the text (`-` for stdin).
    #[arg(long, conflicts_with = "text_fetch")]
    pub text: Option<PathBuf>,
    /// Record of --text to use.
    #[arg(long, requires = "text")]
    pub text_locus: Option<String>,
    /// Download the text by locus (needs --allow-network).
    #[arg(long)]
    pub text_fetch: Option<String>,
    /// Pattern given inline.
    #[arg(long, conflicts_with_all = ["pattern", "pattern_fetch"])]
    pub pattern_seq: Option<String>,
    /// FASTA file holding the pattern (`-` for stdin).
    #[arg(long, conflicts_with = "pattern_fetch")]
    pub pattern: Option<PathBuf>,
    #[arg(long, requires = "pattern")]
    pub pattern_locus: Option<String>,
    /// Download the pattern by locus (needs --allow-network).
    #[arg(long)]
    pub pattern_fetch: Option<String>,
    /// Permit network access for --*-fetch.
    #[arg(long)]
    pub allow_network: bool,
    #[command(flatten)]
    pub regions: RegionArgs,
    #[command(flatten)]
    pub engine: EngineArgs,
    #[command(flatten)]
    pub encoding: EncodingArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct MatrixArgs {
    /// Text given inline.
    #[arg(long, conflicts_with = "text")]
    pub text_seq: Option<String>,
    /// FASTA file holding the text; also the pattern set when --patterns is absent.
    #[arg(long)]
    pub text: Option<PathBuf>,
    /// Record of --text to use as the text (default: the first).
    #[arg(long)]
    pub text_locus: Option<String>,
    /// FASTA file of patterns.
    #[arg(long)]
    pub patterns: Option<PathBuf>,
    /// Use the bundled published data set and show the published values alongside.
    #[arg(long, conflicts_with_all = ["text_seq", "text", "patterns"])]
    pub table4: bool,
    /// Sort rows by descending score (ties keep input order).
    #[arg(long)]
    pub rank: bool,
    /// Report per-row data errors and continue.
    #[arg(long)]
    pub keep_going: bool,
    #[command(flatten)]
    pub regions: RegionArgs,
    #[command(flatten)]
    pub engine: EngineArgs,
    #[command(flatten)]
    pub encoding: EncodingArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct IndexArgs {
    /// Sequence given inline.
    #[arg(long, conflicts_with = "input")]
    pub seq: Option<String>,
    /// FASTA file (`-` for stdin).
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, requires = "input")]
    pub locus: Option<String>,
    #[arg(long)]
    pub region: Option<Region>,
    #[command(flatten)]
    pub encoding: EncodingArgs,
    /// text or json.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Comma-separated engines.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "postings,bitplanes,naive"
    )]
    pub engines: Vec<Engine>,
    /// Comma-separated, strictly increasing text lengths.
    #[arg(long, value_delimiter = ',', default_value = "10000,20000,40000")]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 7)]
    pub repetitions: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Substitution rate used to derive patterns from texts.
    #[arg(long, default_value_t = 0.25)]
    pub rate: f64,
    /// Minimum wall time per timing sample, in microseconds.
    #[arg(long, default_value_t = 2000)]
    pub min_sample_us: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct FetchArgs {
    pub locus: String,
    /// Required: permit network access.
    #[arg(long)]
    pub allow_network: bool,
    /// URL template with a `{locus}` placeholder; defaults to $LOGMATCH_ENDPOINT or NCBI.
    #[arg(long)]
    pub endpoint: Option<String>,
    #[arg(long)]
    pub region: Option<Region>,
}

/// Failure of a subcommand, carrying its exit status.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(Error),
    /// Rows skipped under `--keep-going`.
    RowsFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Data(Error::EngineDisagreement(_)) => 4,
            CliError::Data(Error::InvalidSchedule(_)) => 2,
            CliError::Data(_) | CliError::RowsFailed(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Data(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Data(e) => write!(f, "{e}"),
            CliError::RowsFailed(k) => write!(f, "{k} pattern(s) could not be scored"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compare(args) => commands::compare(&args),
        Command::Matrix(args) => commands::matrix(&args),
        Command::Index(args) => commands::index(&args),
        Command::Bench(args) => commands::bench(&args),
        Command::Fetch(args) => commands::fetch(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("logmatch: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
