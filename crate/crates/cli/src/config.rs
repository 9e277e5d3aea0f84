use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hecke_metro::coxeter::{Group, GroupFamily, DEFAULT_ENUMERATION_CAP};
use hecke_metro::scalar::{parse_rational, Rational};

/// Environment variable overriding the enumeration cap.
pub const CAP_VAR: &str = "HECKE_METRO_CAP";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] hecke_metro::error::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(
    name = "hecke-metro",
    version,
    about = "Exact analysis of Metropolis chains on finite Coxeter groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Closed-form chi-square per step next to brute-force evolution.
    Analyze(AnalyzeArgs),
    /// Run the invariant suite on one instance.
    Verify(VerifyArgs),
    /// Draw exact samples from the length-weighted stationary law.
    Sample(SampleArgs),
    /// Evaluate mixing bounds over a grid.
    Bounds(BoundsArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Symmetric,
    Hypercube,
    Dihedral,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum ScanKind {
    Short,
    Long,
    Random,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct InstanceArgs {
    #[arg(long, value_enum)]
    pub family: FamilyKind,
    #[arg(long)]
    pub n: usize,
    /// θ in (0, 1], as "p/q", an integer or a decimal.
    #[arg(long)]
    pub theta: String,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write here (atomically) instead of stdout. Not echoed, so reruns
    /// to different paths produce identical files.
    #[arg(long)]
    #[serde(skip)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[arg(long, value_enum, default_value = "long")]
    pub scan: ScanKind,
    #[arg(long, default_value_t = 3)]
    pub lmax: usize,
    /// Average the chi-square over a π-distributed start.
    #[arg(long)]
    pub averaged: bool,
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: Mode,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[arg(long, value_enum, default_value = "long")]
    pub scan: ScanKind,
    #[arg(long, default_value_t = 2)]
    pub lmax: usize,
    /// Negative control: perturb K_1 before comparing it with its Hecke matrix.
    #[arg(long)]
    pub perturb: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SampleArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum BoundsTable {
    /// Bound values over the (n, θ, c) grid.
    Grid,
    /// Lead constants of the random and systematic hypercube scans.
    Lead,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct BoundsArgs {
    #[arg(long, value_enum)]
    pub family: Option<FamilyKind>,
    #[arg(long, value_enum, default_value = "grid")]
    pub table: BoundsTable,
    /// Comma-separated sizes.
    #[arg(long, value_delimiter = ',', default_values_t = [10, 20, 30, 40, 50, 60, 70, 80, 90, 100])]
    pub ns: Vec<usize>,
    /// Comma-separated θ values.
    #[arg(long, value_delimiter = ',', default_values_t = [0.5])]
    pub thetas: Vec<f64>,
    /// Comma-separated c values; step counts for the dihedral random scan.
    #[arg(long, value_delimiter = ',', default_values_t = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0])]
    pub cs: Vec<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

impl InstanceArgs {
    pub fn family(&self) -> CliResult<GroupFamily> {
        let family = match self.family {
            FamilyKind::Symmetric => GroupFamily::Symmetric(self.n),
            FamilyKind::Hypercube => GroupFamily::Hypercube(self.n),
            FamilyKind::Dihedral => GroupFamily::Dihedral(self.n),
        };
        Ok(family.validated()?)
    }

    /// Exact θ; floats in scientific notation are refused rather than rounded.
    pub fn theta_exact(&self) -> CliResult<Rational> {
        parse_rational(&self.theta)
            .map_err(|_| CliError::Usage(format!("exact mode needs a rational theta, got {:?}", self.theta)))
    }

    pub fn theta_float(&self) -> CliResult<f64> {
        if let Ok(exact) = parse_rational(&self.theta) {
            return Ok(hecke_metro::scalar::Scalar::as_f64(&exact));
        }
        self.theta
            .trim()
            .parse::<f64>()
            .map_err(|_| CliError::Usage(format!("theta is not a number: {:?}", self.theta)))
    }
}

pub fn enumeration_cap() -> CliResult<usize> {
    match std::env::var(CAP_VAR) {
        Ok(value) => value
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{CAP_VAR} must be a positive integer, got {value:?}"))),
        Err(_) => Ok(DEFAULT_ENUMERATION_CAP),
    }
}

pub fn enumerate(family: GroupFamily) -> CliResult<Group> {
    Ok(Group::enumerate_with_cap(family, enumeration_cap()?)?)
}
