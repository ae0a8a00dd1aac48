use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;

/// Exact IET codings, Rauzy graph evolution and reconstruction.
///
/// Exit codes: 0 success or accepted, 1 rejected or failed check,
/// 2 inconclusive (prefix too short for the window), 3 usage error.
#[derive(Parser)]
#[command(name = "ietwords", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the natural coding of an IET to a word file.
    Gen(GenArgs),
    /// Write the complexity and special-factor counts as CSV.
    Analyze(AnalyzeArgs),
    /// Write one DOT file per Rauzy graph order.
    Rauzy(RauzyArgs),
    /// Decide whether the word's labeled Rauzy graphs evolve correctly.
    Validate(ValidateArgs),
    /// Check the interval conditions on extension sets under letter orders.
    Fz(FzArgs),
    /// Build a candidate IET from a word and verify it by regeneration.
    Reconstruct(ReconstructArgs),
}

#[derive(Args)]
struct GenArgs {
    /// IET config file; the inline flags below describe one instead.
    #[arg(long, conflicts_with_all = ["lengths", "perm"])]
    config: Option<PathBuf>,
    #[arg(long, num_args = 1.., requires = "perm")]
    lengths: Vec<String>,
    #[arg(long, num_args = 1.., requires = "lengths")]
    perm: Vec<usize>,
    #[arg(long, num_args = 1..)]
    flips: Vec<u8>,
    /// Radicand of the quadratic field for inline lengths.
    #[arg(long)]
    d: Option<u64>,
    /// Overrides the config's starting point.
    #[arg(long, allow_hyphen_values = true)]
    x0: Option<String>,
    /// Number of letters.
    #[arg(short = 'n', long = "length")]
    length: usize,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct AnalyzeArgs {
    word: PathBuf,
    /// Largest factor length reported.
    #[arg(long, default_value_t = 30)]
    max_n: usize,
    /// CSV path; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct RauzyArgs {
    word: PathBuf,
    #[arg(long, default_value_t = 1)]
    k_min: usize,
    #[arg(long, default_value_t = 10)]
    k_max: usize,
    /// Directory receiving `rauzy_k<k>.dot`.
    #[arg(long)]
    dot: PathBuf,
    /// Export labeled graphs from the validator's labeling (orders >= K).
    #[arg(long)]
    labeled: bool,
    #[arg(long)]
    non_oriented: bool,
}

#[derive(Args)]
struct ValidateArgs {
    word: PathBuf,
    #[arg(long, default_value_t = 1)]
    k_min: usize,
    #[arg(long, default_value_t = 30)]
    k_max: usize,
    /// Allow orientation-reversing marks.
    #[arg(long)]
    non_oriented: bool,
    /// Print the full labeling of an accepted evolution.
    #[arg(short, long)]
    verbose: bool,
    /// Also write the report to this file.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct FzArgs {
    word: PathBuf,
    #[arg(long, default_value_t = 20)]
    max_len: usize,
    /// Two orders, smallest letter first, e.g. `--orders ab ba`.
    #[arg(long, num_args = 2, value_names = ["PI0", "PI1"], conflicts_with = "search", required_unless_present = "search")]
    orders: Vec<String>,
    /// Try every order pair.
    #[arg(long)]
    search: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ReconstructArgs {
    word: PathBuf,
    /// Cylinder depth for frequencies and the residual.
    #[arg(long, default_value_t = 6)]
    depth: usize,
    #[arg(long, default_value_t = 1)]
    k_min: usize,
    #[arg(long, default_value_t = 20)]
    k_max: usize,
    #[arg(long)]
    non_oriented: bool,
    /// Letters compared in the roundtrip check.
    #[arg(long, default_value_t = 500)]
    roundtrip: usize,
    /// Candidate config path.
    #[arg(long)]
    config_out: PathBuf,
    /// Residual and roundtrip CSV path.
    #[arg(long)]
    report_out: PathBuf,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { commands::USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Gen(a) => commands::gen(a),
        Command::Analyze(a) => commands::analyze(a),
        Command::Rauzy(a) => commands::rauzy(a),
        Command::Validate(a) => commands::validate(a),
        Command::Fz(a) => commands::fz(a),
        Command::Reconstruct(a) => commands::reconstruct(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::USAGE)
        }
    }
}
