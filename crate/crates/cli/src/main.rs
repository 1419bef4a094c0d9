mod commands;
mod input;
mod output;
mod stats;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

const SPEC_HELP: &str = "\
Set sources (--set):
  ap:START:STEP:LEN                 arithmetic progression
  gp:START:RATIO:LEN                geometric progression
  convex:squares:N                  {1, 4, ..., N^2}; also cubes, powers-K
  randint:LO:HI:LEN:seed=S[:den=D]  LEN distinct numerators from [LO, HI], over D
  randgauss:LO:HI:LEN:seed=S[:den=D] same, real and imaginary parts independently
  file:PATH                         one scalar per line, '#' comments

Scalars are written p/q+r/si, e.g. 3, -1/2, 1+2i, 3+2/5i.
Random kinds use ChaCha8 seeded with S.

Exit status: 0 every exact check passed, 1 an exact check failed,
2 the input was rejected.

Environment: SUMPROD_OUTPUT_DIR resolves relative --output paths;
SUMPROD_PRECISION sets the default --precision.";

#[derive(Parser, Debug)]
#[command(name = "sumprod", version, about = "Sum-product statistics, inequality checks and incidence counts", after_help = SPEC_HELP)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Report format; scan defaults to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Decimal digits for irrational quantities (at least 30).
    #[arg(long, global = true, env = "SUMPROD_PRECISION", default_value_t = 50, value_parser = clap::value_parser!(u32).range(30..))]
    pub precision: u32,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseArg {
    Ratio,
    Product,
    Both,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignArg {
    Sum,
    Diff,
    Both,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sizes of A±A, A·A, A:A and the energies E, E_*, E_3.
    Stats {
        #[arg(long)]
        set: String,
    },
    /// Exact inequality suite, incidence reports and the line-family inclusion.
    Verify {
        #[arg(long)]
        set: String,
        /// Skip checks that divide by elements of A.
        #[arg(long)]
        no_multiplicative: bool,
    },
    /// The incidence proof chain on a concrete set, with the observed exponents.
    Chain {
        #[arg(long)]
        set: String,
        #[arg(long, value_enum, default_value_t = CaseArg::Both)]
        case: CaseArg,
        #[arg(long, value_enum, default_value_t = SignArg::Both)]
        sign: SignArg,
    },
    /// Incidences and rich points of a point file against a line file.
    Incidence {
        /// One `x;y` per line.
        #[arg(long)]
        points: PathBuf,
        /// One `a;b;c` per line, for a·x + b·y = c.
        #[arg(long)]
        lines: PathBuf,
        /// Richness thresholds; defaults to powers of two up to the largest degree.
        #[arg(long = "rich")]
        rich: Vec<usize>,
    },
    /// One statistics row per instance of a family template.
    Scan {
        /// A set spec with `{n}` where the swept parameter goes.
        #[arg(long)]
        template: String,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[arg(long, default_value_t = 1)]
        step: usize,
        /// Worker threads; output is identical for any value.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("sumprod: {msg}");
            ExitCode::from(2)
        }
    }
}
