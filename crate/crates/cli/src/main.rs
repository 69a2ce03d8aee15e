use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;

use commands::Failure;

#[derive(Parser)]
#[command(name = "chebgamma", version, about = "Chebyshev tables for the Gamma function family")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a coefficient table file
    Gen(GenArgs),
    /// Evaluate a function at one point
    Eval(EvalArgs),
    /// Compare a table against the high-precision oracle on a grid (CSV)
    Errscan(ErrscanArgs),
    /// Optimal truncation of the Stirling series over a grid (CSV)
    Stirling(StirlingArgs),
    /// Harmonic numbers (m = 0) and sums of k^-(m+1) for k < n (m >= 1)
    Harmonic(HarmonicArgs),
}

#[derive(Args)]
struct TableSource {
    /// Table file; generated on the fly when omitted
    #[arg(long)]
    table: Option<PathBuf>,

    /// Target digits of a generated table
    #[arg(long, default_value_t = 20)]
    digits: usize,
}

#[derive(Args)]
struct GenArgs {
    /// gamma, invgamma, lngamma, psi0 or psi<m>
    function: String,

    #[arg(long, default_value_t = 30)]
    digits: usize,

    /// Coefficients to keep; by default the smallest count whose tail is below 10^-digits
    #[arg(long)]
    ncoeffs: Option<usize>,

    /// Output file; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    function: String,

    #[arg(allow_negative_numbers = true)]
    z: String,

    #[command(flatten)]
    source: TableSource,
}

#[derive(Args)]
struct ErrscanArgs {
    function: String,

    #[command(flatten)]
    source: TableSource,

    /// Keep only the first n coefficients of the table
    #[arg(long)]
    ncoeffs: Option<usize>,

    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    zmin: f64,

    #[arg(long, default_value_t = 1e4)]
    zmax: f64,

    /// Logarithmically spaced points; 200 linear points on [zmin, 3] are added
    #[arg(long, default_value_t = 200)]
    points: usize,

    /// Allow zmin < 1 through the recurrence
    #[arg(long)]
    extend: bool,

    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct StirlingArgs {
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    zmin: f64,

    #[arg(long, default_value_t = 50.0)]
    zmax: f64,

    #[arg(long, default_value_t = 50)]
    points: usize,

    /// Largest term index examined per point
    #[arg(long, default_value_t = 1000)]
    nscan: usize,

    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct HarmonicArgs {
    #[arg(long, default_value_t = 0)]
    m: u32,

    #[arg(long)]
    n: u64,

    #[command(flatten)]
    source: TableSource,
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Gen(a) => commands::gen(&a.function, a.digits, a.ncoeffs, a.out.as_deref()),
        Command::Eval(a) => commands::eval(&a.function, &a.z, a.source.table.as_deref(), a.source.digits),
        Command::Errscan(a) => commands::errscan(commands::ErrscanOptions {
            function: &a.function,
            table: a.source.table.as_deref(),
            digits: a.source.digits,
            ncoeffs: a.ncoeffs,
            zmin: a.zmin,
            zmax: a.zmax,
            points: a.points,
            extend: a.extend,
            out: a.out.as_deref(),
        }),
        Command::Stirling(a) => commands::stirling(a.zmin, a.zmax, a.points, a.nscan, a.out.as_deref()),
        Command::Harmonic(a) => commands::harmonic(a.m, a.n, a.source.table.as_deref(), a.source.digits),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
