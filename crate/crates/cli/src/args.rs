use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use vermalab_core::exactalg::MAX_N;
use vermalab_core::patterns::DegreeVector;

#[derive(Debug, Parser)]
#[command(name = "verma-lab", version, about = "Exact verification suites for universal Verma modules of gl(n)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output format of the report or table.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Compare the JSON document with the golden file in this directory.
    #[arg(long, global = true)]
    pub golden: Option<PathBuf>,
    /// Overwrite the golden file instead of comparing.
    #[arg(long, global = true, requires = "golden")]
    pub bless: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    RandomEval,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeneratorSet {
    /// Corrected Casimirs, 2 <= k <= n-1.
    TildeCasimirs,
    /// Casimirs, 2 <= k <= n-1.
    Casimirs,
    /// c1(D_k) for every k.
    DetBundles,
    /// c1(D_k) for the k with d_k and d_(k-1) nonzero.
    DetBundleBasis,
    /// Diagonal and Kunneth parts of every c_j(W_i).
    Chern,
}

#[derive(Debug, Clone, Args)]
pub struct Rank {
    /// Rank of gl(n).
    #[arg(long, value_parser = parse_rank)]
    pub n: usize,
}

/// Exactly one of a single degree or all degrees up to a total.
#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct DegreeChoice {
    /// One degree vector d1,..,d(n-1).
    #[arg(long, value_parser = parse_degree)]
    pub degree: Option<DegreeVector>,
    /// Every degree with |d| up to this total.
    #[arg(long)]
    pub max_degree: Option<u32>,
}

#[derive(Debug, Clone, Args)]
pub struct Specialization {
    /// Point such as "x1=0,x2=1,x3=2,h=1".
    #[arg(long)]
    pub spec: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the fixed-point patterns (or global fixed points) of one degree.
    Patterns {
        #[command(flatten)]
        rank: Rank,
        #[arg(long, value_parser = parse_degree)]
        degree: DegreeVector,
        /// List global fixed points instead.
        #[arg(long)]
        global: bool,
    },
    /// Check every gl(n) commutation relation on |d| <= max-degree.
    VerifyGl {
        #[command(flatten)]
        rank: Rank,
        #[arg(long)]
        max_degree: u32,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        trials: u32,
    },
    /// Joint spectrum on one degree, or the Casimir suite up to a total degree.
    GtSpectrum {
        #[command(flatten)]
        rank: Rank,
        #[command(flatten)]
        degrees: DegreeChoice,
        #[arg(long, value_enum, default_value_t = GeneratorSet::TildeCasimirs)]
        generators: GeneratorSet,
    },
    /// Whittaker components and the cyclicity report.
    Whittaker {
        #[command(flatten)]
        rank: Rank,
        #[command(flatten)]
        degrees: DegreeChoice,
        /// Report components in the normalization f_i v = v.
        #[arg(long)]
        integral: bool,
    },
    /// Multiplication table of the c1(D_k) algebra at a rational point.
    Ring {
        #[command(flatten)]
        rank: Rank,
        #[arg(long, value_parser = parse_degree)]
        degree: DegreeVector,
        #[command(flatten)]
        point: Specialization,
    },
    /// Commutativity, q = 0 limit and quadratic-space form of QC_k.
    QcCheck {
        #[command(flatten)]
        rank: Rank,
        #[command(flatten)]
        degrees: DegreeChoice,
    },
    /// Curvature of the connection built from QC_k.
    Flatness {
        #[command(flatten)]
        rank: Rank,
        #[command(flatten)]
        degrees: DegreeChoice,
    },
    /// Numerical transport of the QC_k connection along a path.
    Monodromy {
        #[command(flatten)]
        rank: Rank,
        #[arg(long, value_parser = parse_degree)]
        degree: DegreeVector,
        #[command(flatten)]
        point: Specialization,
        #[arg(long, default_value_t = 0.5)]
        kappa: f64,
        /// JSON list of segments {"from": [..], "to": [..], "steps": k}.
        #[arg(long)]
        path: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
        #[arg(long, default_value_t = 200_000)]
        max_steps: usize,
    },
    /// Both gl(n) actions on the global module and their companions.
    GlobalVerify {
        #[command(flatten)]
        rank: Rank,
        #[arg(long)]
        max_degree: u32,
    },
    /// K-theoretic eigenvalue identities and separation.
    Ktheory {
        #[command(flatten)]
        rank: Rank,
        #[command(flatten)]
        degrees: DegreeChoice,
    },
}

fn parse_rank(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|_| format!("not a rank: {s}"))?;
    if !(2..=MAX_N).contains(&n) {
        return Err(format!("rank must lie in 2..={MAX_N}"));
    }
    Ok(n)
}

fn parse_degree(s: &str) -> Result<DegreeVector, String> {
    s.split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|_| format!("not a degree component: {p:?}")))
        .collect::<Result<Vec<_>, _>>()
        .map(DegreeVector)
}
