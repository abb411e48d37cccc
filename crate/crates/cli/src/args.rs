use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use locnil::modular::PrimeSet;
use locnil::Polynomial;
use num_bigint::BigInt;

#[derive(Debug, Parser)]
#[command(name = "locnil", version, about = "Nilpotency and local nilpotency of integer polynomial orbits")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,

    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    pub json: bool,

    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(flatten)]
    pub limits: Limits,
}

impl Cli {
    pub fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else {
            self.format
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Debug, Args)]
pub struct Limits {
    /// Largest prime checked by certify, explore and verify-theorem.
    #[arg(long = "primes", global = true, env = "LOCNIL_PRIME_BOUND", default_value_t = 300)]
    pub prime_bound: u64,

    /// Maximum orbit steps over Z.
    #[arg(long, global = true, env = "LOCNIL_STEP_CAP", default_value_t = 1_000_000)]
    pub step_cap: u64,

    /// Maximum bit length of an orbit value over Z.
    #[arg(long, global = true, env = "LOCNIL_BIT_CAP", default_value_t = 1_000_000)]
    pub bit_cap: u64,

    /// Largest prime for the exhaustive trap check.
    #[arg(long, global = true, env = "LOCNIL_TRAP_CAP", default_value_t = 101)]
    pub trap_cap: u64,

    /// Largest search space verify-theorem will enumerate.
    #[arg(long, global = true, env = "LOCNIL_BUDGET", default_value_t = 10_000_000)]
    pub budget: u64,
}

#[derive(Debug, Args)]
pub struct Target {
    /// Polynomial, as `-2x^2+7x-3` or as constant-first coefficients `-3,7,-2`.
    #[arg(short = 'u', long = "poly", allow_hyphen_values = true, value_parser = parse_poly)]
    pub u: Polynomial,

    /// Base point.
    #[arg(short, long, allow_negative_numbers = true, value_parser = parse_big)]
    pub r: BigInt,
}

#[derive(Debug, Args)]
pub struct Excluded {
    /// Excluded primes, comma separated. Entries that are not prime are
    /// rejected.
    #[arg(short = 'A', long = "exclude", value_delimiter = ',')]
    pub primes: Vec<u64>,
}

impl Excluded {
    pub fn set(&self) -> Result<PrimeSet, String> {
        PrimeSet::new(self.primes.clone()).map_err(|e| format!("-A: {e}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExploreKind {
    /// Base points where `u` is nilpotent.
    N,
    /// Base points where `u` is locally nilpotent.
    Ln,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether the orbit of r reaches 0 over Z.
    Orbit {
        #[command(flatten)]
        target: Target,
        /// Number of orbit values to list.
        #[arg(long, default_value_t = 10)]
        show: u64,
    },
    /// Exact classification where a complete list applies.
    Classify {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        excluded: Excluded,
    },
    /// Per-prime certificates: m_p or a 0-avoiding cycle mod p.
    Certify {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        excluded: Excluded,
        /// Keep going after the first refutation.
        #[arg(long)]
        all: bool,
    },
    /// Cross-check the classifier over a coefficient box.
    VerifyTheorem {
        /// Maximum degree.
        #[arg(long, default_value_t = 3)]
        degree: usize,
        /// Coefficients range over [-C, C].
        #[arg(long, short = 'C', default_value_t = 5)]
        coeff_bound: u32,
        #[arg(short, long, allow_negative_numbers = true, value_parser = parse_big)]
        r: BigInt,
        #[command(flatten)]
        excluded: Excluded,
    },
    /// Scan base points in [-W, W].
    Explore {
        #[arg(short = 'u', long = "poly", allow_hyphen_values = true, value_parser = parse_poly)]
        u: Polynomial,
        #[arg(long, short = 'W', default_value_t = 10)]
        r_bound: u64,
        #[arg(long, value_enum, default_value_t = ExploreKind::Ln)]
        kind: ExploreKind,
    },
    /// Exhaustive check of the additive trap over F_p.
    Trap {
        #[arg(short, long)]
        p: u64,
        /// Include the per-point step counts.
        #[arg(long)]
        points: bool,
    },
    /// Primes p with gamma*alpha^n != beta (mod p) for all n >= 1.
    Lemma1 {
        #[arg(long, allow_negative_numbers = true, value_parser = parse_big)]
        alpha: BigInt,
        #[arg(long, allow_negative_numbers = true, value_parser = parse_big)]
        beta: BigInt,
        #[arg(long, allow_negative_numbers = true, value_parser = parse_big)]
        gamma: BigInt,
    },
    /// v(x) = u(rx)/r, moving base point r to 1.
    Reduce {
        #[command(flatten)]
        target: Target,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Orbit { .. } => "orbit",
            Command::Classify { .. } => "classify",
            Command::Certify { .. } => "certify",
            Command::VerifyTheorem { .. } => "verify-theorem",
            Command::Explore { .. } => "explore",
            Command::Trap { .. } => "trap",
            Command::Lemma1 { .. } => "lemma1",
            Command::Reduce { .. } => "reduce",
        }
    }
}

fn parse_poly(s: &str) -> Result<Polynomial, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_big(s: &str) -> Result<BigInt, String> {
    s.trim().parse().map_err(|_| format!("{s:?} is not an integer"))
}
