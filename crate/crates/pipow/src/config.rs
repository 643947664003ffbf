use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use pipow_core::series::DEFAULT_WORK_CEILING;
use pipow_core::BigRational;

use crate::CliError;

/// Overrides the default work ceiling; `--work-ceiling` overrides this.
pub const WORK_CEILING_ENV: &str = "PIPOW_WORK_CEILING";

pub const DEFAULT_DIGITS: u32 = 20;

/// Truncation used by `table` when `--upto` is absent (still capped by the
/// work ceiling).
pub const DEFAULT_TABLE_TRUNCATION: u64 = 100_000;

pub const DEFAULT_SINC_TERMS: u64 = 100;

/// Highest power `x^(2·powers)` kept by `sinc` in the nested-sum series.
pub const DEFAULT_SINC_POWERS: usize = 12;

#[derive(Parser, Debug, Clone)]
#[command(
    name = "pipow",
    version,
    about = "Nested-sum series for π^(2n)/(2n+1)!: partial sums, bounds, tables and checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: SubcommandKind,

    /// Nesting depth n.
    #[arg(long, global = true)]
    pub depth: Option<usize>,

    /// Truncation N of the outermost index.
    #[arg(long, global = true)]
    pub upto: Option<u64>,

    /// Decimal digits of the reported values.
    #[arg(long, global = true, default_value_t = DEFAULT_DIGITS)]
    pub digits: u32,

    #[arg(long, global = true, value_enum)]
    pub mode: Option<ModeChoice>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Number of variables M for verify-theorem.
    #[arg(long = "m", global = true)]
    pub m: Option<u32>,

    /// Rational argument of sinc, `p/q` or an integer.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub x: Option<String>,

    /// Product factors and coefficient truncation for sinc.
    #[arg(long, global = true)]
    pub terms: Option<u64>,

    /// Highest power x^(2·powers) kept in the sinc series.
    #[arg(long, global = true)]
    pub powers: Option<usize>,

    #[arg(long, global = true)]
    pub max_depth: Option<usize>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Largest truncation N a command may sweep.
    #[arg(long, global = true)]
    pub work_ceiling: Option<u64>,

    /// Print exact results as decimals at --digits.
    #[arg(long, global = true)]
    pub as_decimal: bool,

    /// Allow exact mode above N = 2000.
    #[arg(long, global = true)]
    pub force_exact: bool,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubcommandKind {
    /// Partial sum Sₙ(N) with tail bound and reference.
    Sum,
    /// Smallest N whose tail bound reaches --digits, then Sₙ(N).
    Converge,
    /// One row per depth 1..=max-depth.
    Table,
    /// Product expansion vs. nested-sum σ vs. recurrence, plus numeric oracles.
    VerifyTheorem,
    /// Coefficients of ∏(1 + x_k t) for k = 1..=m, one per power of t.
    Expand,
    /// Truncated sinc product and series against sin(πx)/(πx).
    Sinc,
    /// Timing of the literal loops, the sweep and Newton's identities.
    Bench,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeChoice {
    Exact,
    Fixed,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

/// Validated run configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub subcommand: SubcommandKind,
    pub depth: Option<usize>,
    pub truncation: Option<u64>,
    pub digits: u32,
    pub mode: Option<ModeChoice>,
    pub format: Format,
    pub work_ceiling: u64,
    pub out: Option<PathBuf>,
    pub m: Option<u32>,
    pub x: Option<BigRational>,
    pub terms: Option<u64>,
    pub powers: usize,
    pub max_depth: Option<usize>,
    pub as_decimal: bool,
    pub force_exact: bool,
}

impl RunConfig {
    pub fn new(subcommand: SubcommandKind) -> Self {
        Self {
            subcommand,
            depth: None,
            truncation: None,
            digits: DEFAULT_DIGITS,
            mode: None,
            format: Format::Text,
            work_ceiling: DEFAULT_WORK_CEILING,
            out: None,
            m: None,
            x: None,
            terms: None,
            powers: DEFAULT_SINC_POWERS,
            max_depth: None,
            as_decimal: false,
            force_exact: false,
        }
    }

    /// Validates parsed arguments; `env_ceiling` is the raw value of
    /// [`WORK_CEILING_ENV`], if set.
    pub fn from_cli(cli: Cli, env_ceiling: Option<&str>) -> Result<Self, CliError> {
        if cli.digits == 0 {
            return Err(CliError::Invalid("--digits must be at least 1".into()));
        }
        let work_ceiling = match (cli.work_ceiling, env_ceiling) {
            (Some(flag), _) => flag,
            (None, Some(raw)) => raw.trim().parse().map_err(|_| {
                CliError::Invalid(format!(
                    "{WORK_CEILING_ENV}={raw:?} is not a positive integer"
                ))
            })?,
            (None, None) => DEFAULT_WORK_CEILING,
        };
        if work_ceiling == 0 {
            return Err(CliError::Invalid(
                "the work ceiling must be at least 1".into(),
            ));
        }
        let x = cli
            .x
            .as_deref()
            .map(str::parse::<BigRational>)
            .transpose()
            .map_err(|e| CliError::Invalid(format!("--x: {e}")))?;
        Ok(Self {
            subcommand: cli.command,
            depth: cli.depth,
            truncation: cli.upto,
            digits: cli.digits,
            mode: cli.mode,
            format: cli.format,
            work_ceiling,
            out: cli.out,
            m: cli.m,
            x,
            terms: cli.terms,
            powers: cli.powers.unwrap_or(DEFAULT_SINC_POWERS),
            max_depth: cli.max_depth,
            as_decimal: cli.as_decimal,
            force_exact: cli.force_exact,
        })
    }
}

pub(crate) fn require<T: Copy>(value: Option<T>, flag: &str, command: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Invalid(format!("`{command}` needs {flag}")))
}
