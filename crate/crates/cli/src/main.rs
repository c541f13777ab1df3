mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use turancert::certify::LaguerreMode;
use turancert::interval::DEFAULT_PRECISION_CAP;
use turancert::sequence::Target;

/// Exit statuses shared by every subcommand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Failed = 1,
    Inconclusive = 2,
    InputError = 3,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        ExitCode::from(s as u8)
    }
}

#[derive(Debug, thiserror::Error)]
#[error("{message}")]
pub struct CliError {
    pub status: Status,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            status: Status::InputError,
            message: message.into(),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "turancert", version, about = "Check and certify Turán-type inequalities for P-recursive sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print exact terms of a sequence.
    Terms(TermsArgs),
    /// Check an inequality directly on an index range.
    Check(CheckArgs),
    /// Produce a certificate that an inequality holds from a start index on.
    Certify(CertifyArgs),
    /// Re-verify a certificate against its spec.
    VerifyCert(VerifyArgs),
    /// Compare computed terms with an OEIS b-file.
    OeisCheck(OeisArgs),
}

#[derive(Args, Debug)]
struct Output {
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Write the report to a file instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TermsArgs {
    #[arg(long, value_name = "PATH")]
    spec: PathBuf,
    /// First index (default: the spec's start index).
    #[arg(long)]
    from: Option<i64>,
    #[arg(long)]
    to: i64,
    /// Also print the ratios a_(n+1)/a_n.
    #[arg(long)]
    ratios: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TargetArg {
    Raw,
    Root,
    Ratio,
}

impl From<TargetArg> for Target {
    fn from(t: TargetArg) -> Self {
        match t {
            TargetArg::Raw => Target::Raw,
            TargetArg::Root => Target::Root,
            TargetArg::Ratio => Target::Ratio,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    Paper,
    Conservative,
}

impl From<ModeArg> for LaguerreMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Paper => LaguerreMode::Paper,
            ModeArg::Conservative => LaguerreMode::Conservative,
        }
    }
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// Spec files; several may be given and are checked as separate jobs.
    #[arg(long, value_name = "PATH", required = true)]
    spec: Vec<PathBuf>,
    #[arg(long, value_enum, default_value = "root")]
    target: TargetArg,
    /// hot, log-concave or laguerre<m>.
    #[arg(long, default_value = "hot")]
    property: String,
    #[arg(long)]
    from: i64,
    #[arg(long)]
    to: i64,
    /// Precision cap in bits for interval evaluation.
    #[arg(long, default_value_t = DEFAULT_PRECISION_CAP)]
    precision: u32,
    /// Number of specs checked concurrently.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CriterionArg {
    Hot,
    Laguerre2,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    /// Spec file with a bounds block.
    #[arg(long, value_name = "PATH")]
    spec: PathBuf,
    #[arg(long, value_enum, default_value = "root")]
    target: TargetArg,
    #[arg(long, value_enum, default_value = "hot")]
    property: CriterionArg,
    /// Index from which the inequality is claimed.
    #[arg(long)]
    from: i64,
    /// Laguerre criterion variant; only valid with --property laguerre2.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long, default_value_t = DEFAULT_PRECISION_CAP)]
    precision: u32,
    /// Certificate path (default: stdout).
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Certificate file.
    #[arg(value_name = "CERT")]
    cert: PathBuf,
    #[arg(long, value_name = "PATH")]
    spec: PathBuf,
    /// Precision cap (default: the one recorded in the certificate).
    #[arg(long)]
    precision: Option<u32>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
pub struct OeisArgs {
    #[arg(long, value_name = "PATH")]
    spec: PathBuf,
    /// Local b-file; otherwise the cache is used.
    #[arg(long, value_name = "PATH", conflicts_with_all = ["network", "id"])]
    bfile: Option<PathBuf>,
    /// OEIS id (default: the spec's oeis_id).
    #[arg(long)]
    id: Option<String>,
    /// First index compared (default: the spec's start index).
    #[arg(long)]
    from: Option<i64>,
    /// Last index compared.
    #[arg(long)]
    to: Option<i64>,
    /// Allow downloading a missing b-file into the cache.
    #[arg(long)]
    network: bool,
    /// Cache directory (default: $TURANCERT_CACHE_DIR or the user cache).
    #[arg(long, value_name = "DIR")]
    cache_dir: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                Status::InputError.into()
            } else {
                Status::Ok.into()
            };
        }
    };
    let result = match cli.command {
        Command::Terms(a) => commands::terms(a),
        Command::Check(a) => commands::check(a),
        Command::Certify(a) => commands::certify(a),
        Command::VerifyCert(a) => commands::verify_cert(a),
        Command::OeisCheck(a) => commands::oeis_check(a),
    };
    match result {
        Ok(s) => s.into(),
        Err(e) => {
            eprintln!("error: {e}");
            e.status.into()
        }
    }
}
