//! `qtrunc`: expand q-series, verify truncated pentagonal identities, and
//! check or discover q-Zeilberger certificates.

mod certificate;
mod expand;
mod output;
mod ranges;
mod verify;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::ranges::{IntRange, MSpec};

#[derive(Parser, Debug)]
#[command(
    name = "qtrunc",
    version,
    about = "Exact truncated q-series and pentagonal truncation identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the coefficients of a series through the given order.
    ///
    /// NAME is euler_product, partition_gf, tail, or <identity>.lhs /
    /// <identity>.rhs for any catalogue identity.
    Expand(ExpandArgs),
    /// Verify catalogue identities coefficient by coefficient.
    Verify(VerifyArgs),
    /// Check a shipped certificate or discover one.
    Certificate {
        #[command(subcommand)]
        action: CertificateAction,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
    /// Record wall-clock milliseconds in reports (JSON is then not
    /// reproducible byte for byte).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Args, Debug)]
pub struct ExpandArgs {
    pub name: String,
    #[arg(long, default_value_t = 100)]
    pub order: i64,
    #[arg(long)]
    pub k: Option<i64>,
    /// A positive integer or `symbolic`.
    #[arg(long)]
    pub m: Option<String>,
    /// Multiply both sides through by (q^m;q)_inf.
    #[arg(long)]
    pub cleared: bool,
    /// `tail` only: rho(k) = slope*k + shift.
    #[arg(long, default_value_t = 1)]
    pub slope: i64,
    /// `tail` only: an integer or `symbolic`.
    #[arg(long, default_value = "1")]
    pub shift: String,
    #[arg(long, default_value_t = 1)]
    pub ell1: i64,
    #[arg(long, default_value_t = 0)]
    pub ell2: i64,
    #[arg(long, default_value_t = 1)]
    pub start_n: i64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Identity to verify; repeatable.
    #[arg(long = "id")]
    pub ids: Vec<String>,
    /// Verify every catalogue identity.
    #[arg(long, conflicts_with = "ids")]
    pub all: bool,
    /// `A..B` or a single value; default 1..3 for identities taking k.
    #[arg(long)]
    pub k: Option<IntRange>,
    /// `A..B`, a single value, or `symbolic`; default 1..2 for identities
    /// taking m.
    #[arg(long)]
    pub m: Option<MSpec>,
    #[arg(long, default_value_t = 100)]
    pub order: i64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Subcommand, Debug)]
pub enum CertificateAction {
    /// verify_certificate on a grid plus the sum recurrence.
    Check(CheckArgs),
    /// Bounded-ansatz search, then an annihilation cross-check.
    Discover(DiscoverArgs),
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// thm_naturalreplace or thm_infinite, unless --file is given.
    #[arg(long)]
    pub id: String,
    /// Certificate JSON to check instead of the shipped one.
    #[arg(long)]
    pub file: Option<std::path::PathBuf>,
    /// Grid {1..G}^2; default 12, or 8 for terms with a formal m.
    #[arg(long)]
    pub grid: Option<i64>,
    /// k range for the sum recurrence; default 1..8, or 1..6 with a formal m.
    #[arg(long)]
    pub k: Option<IntRange>,
    /// m values for the sum recurrence when the term has a formal m;
    /// default 1..3.
    #[arg(long)]
    pub m: Option<MSpec>,
    /// Truncation order of the sum recurrence.
    #[arg(long, default_value_t = 100)]
    pub order: i64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct DiscoverArgs {
    /// Any identity with a q-hypergeometric tail summand.
    #[arg(long)]
    pub id: String,
    /// Recurrence order, 1 or 2.
    #[arg(long, default_value_t = 2)]
    pub order: usize,
    /// Degree of the recurrence polynomials in x; defaults depend on the term.
    #[arg(long)]
    pub deg_p: Option<usize>,
    /// Degree of the numerator of R in x.
    #[arg(long)]
    pub deg_rx: Option<usize>,
    /// Degree of the numerator of R in y.
    #[arg(long)]
    pub deg_ry: Option<usize>,
    /// Where to write the certificate; default <id>.certificate.json.
    #[arg(long)]
    pub write: Option<std::path::PathBuf>,
    /// k range for the annihilation cross-check; default 1..4.
    #[arg(long)]
    pub k: Option<IntRange>,
    /// m values for the cross-check when the term has a formal m; default 1..2.
    #[arg(long)]
    pub m: Option<MSpec>,
    /// Truncation order of the cross-check.
    #[arg(long, default_value_t = 60)]
    pub series_order: i64,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Usage errors exit with 2, failed checks with 1.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Failed(String),
}

impl From<qtrunc::Error> for Failure {
    fn from(e: qtrunc::Error) -> Self {
        use qtrunc::Error::*;
        match e {
            InvalidArgument(_)
            | UnknownIdentity(_)
            | DivergentProduct
            | DomainError { .. }
            | Parse(_) => Failure::Usage(e.to_string()),
            _ => Failure::Failed(e.to_string()),
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("QTRUNC_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        // Only the first configuration wins; later calls are harmless.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Expand(args) => expand::run(&args),
        Command::Verify(args) => verify::run(&args),
        Command::Certificate { action } => match action {
            CertificateAction::Check(args) => certificate::check(&args),
            CertificateAction::Discover(args) => certificate::discover(&args),
        },
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Failed(msg)) => {
            if !msg.is_empty() {
                eprintln!("{msg}");
            }
            ExitCode::from(1)
        }
    }
}
