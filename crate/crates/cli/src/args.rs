use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sfink::GridKind;

#[derive(Debug, Parser)]
#[command(
    name = "sfink",
    version,
    about = "Shafer-Fink type bounds for arcsin: verify, certify, solve"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Mantissa width of the extended-precision oracle.
    #[arg(long, global = true, default_value_t = 128)]
    pub precision_bits: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Uniform,
    Chebyshev,
}

impl From<Kind> for GridKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Uniform => GridKind::Uniform,
            Kind::Chebyshev => GridKind::Chebyshev,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the six-member bound chain on a grid over [0, 1].
    Chain {
        #[arg(long, default_value_t = 10_001)]
        grid: usize,
        #[arg(long, value_enum, default_value_t = Kind::Uniform)]
        grid_kind: Kind,
    },
    /// Certify that the matched square-root bound with parameter b lies above arcsin.
    Certify {
        /// A decimal or a named constant (b1, pi, ...).
        #[arg(long, visible_alias = "b", allow_hyphen_values = true)]
        beta: String,
    },
    /// Solve f_b(1) = target for b; the default target pi/2 gives b1.
    Solve {
        /// A decimal, or `pi/2`.
        #[arg(long, default_value = "pi/2", allow_hyphen_values = true)]
        target: String,
    },
    /// Locate where two curves cross in (lo, hi).
    Crossover {
        /// A preset name or `family:alpha=..,beta=..`; `arcsin` is accepted too.
        #[arg(long, default_value = "algebraic-upper")]
        a: String,
        #[arg(long, default_value = "zhu")]
        b: String,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        lo: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        hi: f64,
    },
    /// Derivative discrepancies at 0, or the optimality evidence for b1 and 4.
    Lambda {
        /// Derivative orders to report; all of 0..=5 when omitted.
        #[arg(long)]
        order: Vec<usize>,
        #[arg(long, default_value = "4", allow_hyphen_values = true)]
        beta: String,
        /// Report the least-upper and greatest-lower bound evidence instead.
        #[arg(long)]
        optimality: bool,
        /// Parameter above b1 used for the upper-bound witness.
        #[arg(long, requires = "optimality")]
        upper_b: Option<f64>,
        /// Parameter in (b1, 4) used for the lower-bound counterexample.
        #[arg(long, requires = "optimality")]
        lower_b: Option<f64>,
    },
    /// Time the machine-precision bound against f64::asin and measure its error envelope.
    Bench {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 1_000_000)]
        iterations: usize,
        #[arg(long, default_value_t = 10_001)]
        grid: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
}

/// A bound given either as `--spec` or through `--family`, `--alpha`, `--beta`.
#[derive(Debug, Clone, Args)]
pub struct SpecArgs {
    /// Preset name or `family:alpha=..,beta=..`.
    #[arg(long, conflicts_with_all = ["family", "alpha", "beta"])]
    pub spec: Option<String>,
    /// algebraic, algebraic2, sqrt or matched.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
}
