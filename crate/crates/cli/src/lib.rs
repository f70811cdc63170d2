//! The `blobgt` command line: argument types, context construction and dispatch.
//!
//! Every subcommand builds a validated context first, computes a report and renders it
//! as text, CSV or JSON. Rendering is a pure function of the report, so identical
//! arguments give byte-identical output.

pub mod commands;
pub mod report;

use blobgt_blocks::{BlockError, GridPoint};
use blobgt_gt::GtError;
use blobgt_klr::{EngineConfig, IdentityError};
use blobgt_residue::{ctx_from_residues, validate_multicharge, MultichargeCtx, ParamError};
use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use report::Outcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    Refuted = 1,
    InputError = 2,
    Inconclusive = 3,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Block(#[from] BlockError),
    #[error(transparent)]
    Identity(#[from] IdentityError),
    #[error(transparent)]
    Gt(#[from] GtError),
    #[error("{0}")]
    Usage(String),
    #[error("no compiled prime field for p={0}")]
    UnsupportedPrime(u32),
    #[error("output: {0}")]
    Output(String),
}

impl CliError {
    pub fn exit(&self) -> Exit {
        match self {
            CliError::Gt(GtError::ReductionDiverged | GtError::NoAnnihilator(_) | GtError::ClassTooLarge(_)) => {
                Exit::Inconclusive
            }
            _ => Exit::InputError,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Parameters shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Quantum characteristic e.
    #[arg(long)]
    pub e: u32,
    /// Level; must equal the number of multicharge entries when given.
    #[arg(long)]
    pub l: Option<usize>,
    /// Characteristic of the coefficient field.
    #[arg(long, default_value_t = 5)]
    pub p: u32,
    /// Multicharge, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub kappa: Vec<i64>,
    /// Start of the interval holding the residue representatives.
    #[arg(long, default_value_t = 0)]
    pub interval_start: i64,
    /// Number of strands.
    #[arg(long)]
    pub m: Option<usize>,
    /// Component whose charge starts the vertical sequence.
    #[arg(long, default_value_t = 1)]
    pub base: usize,
    /// Use the multicharge entries as integer lifts verbatim instead of relifting their residues.
    #[arg(long)]
    pub lifted: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for sampled sweeps.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Rewriting step budget per normalized word.
    #[arg(long, env = "BLOBGT_BUDGET")]
    pub budget: Option<u64>,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "blobgt",
    version,
    about = "Blocks, tableaux and Gelfand-Tsetlin dimensions for generalized blob algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// The numbers epsilon and b_j, the grid and the block intervals.
    Blocks {
        #[command(flatten)]
        common: Common,
    },
    /// Standard tableaux of a residue sequence with degrees and official words.
    Tableaux {
        #[command(flatten)]
        common: Common,
        /// Residues, comma separated; defaults to the vertical sequence of length m.
        #[arg(long, value_delimiter = ',')]
        sequence: Option<Vec<u32>>,
        #[arg(long)]
        count_only: bool,
    },
    /// Abstract and concrete dimensions of the Gelfand-Tsetlin subalgebra.
    Gtdim {
        #[command(flatten)]
        common: Common,
        /// Also compute the concrete dimension inside the truncated algebra.
        #[arg(long)]
        concrete: bool,
        /// Only use the generators y_j with j <= a.
        #[arg(long, value_name = "a")]
        prefix: Option<usize>,
    },
    /// Check named identities on the vertical sequence.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Identity name; all identities when omitted.
        #[arg(long)]
        identity: Option<String>,
        /// Restrict to one grid point, written r,j.
        #[arg(long)]
        point: Option<String>,
        /// Include both sides in canonical text form.
        #[arg(long)]
        dump: bool,
    },
    /// Sweep over classes of possible sequences comparing dimensions with tableau counts.
    #[command(name = "explore-q")]
    ExploreQ {
        #[command(flatten)]
        common: Common,
        /// List class representatives without dimensions.
        #[arg(long)]
        classes_only: bool,
        /// Skip the concrete dimension computation.
        #[arg(long)]
        no_concrete: bool,
        /// Examine this many classes chosen with --seed.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 100_000)]
        class_cap: usize,
    },
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Blocks { common }
            | Command::Tableaux { common, .. }
            | Command::Gtdim { common, .. }
            | Command::Verify { common, .. }
            | Command::ExploreQ { common, .. } => common,
        }
    }
}

impl Common {
    pub fn require_m(&self) -> Result<usize, CliError> {
        self.m.ok_or_else(|| CliError::Usage("--m is required".into()))
    }

    /// A validated context serving sequences of length up to `m_max`.
    pub fn context(&self, m_max: usize) -> Result<MultichargeCtx, CliError> {
        if let Some(l) = self.l {
            if l != self.kappa.len() {
                return Err(CliError::Usage(format!("--l {l} but the multicharge has {} entries", self.kappa.len())));
            }
        }
        if !blobgt_klr::field::SUPPORTED_PRIMES.contains(&self.p) && blobgt_residue::is_prime(self.p) {
            return Err(CliError::UnsupportedPrime(self.p));
        }
        let ctx = if self.lifted {
            validate_multicharge(self.e, self.kappa.len(), self.p, &self.kappa, self.interval_start, m_max)?
        } else {
            ctx_from_residues(self.e, self.p, &self.kappa, self.interval_start, m_max)?
        };
        if self.base == 0 || self.base > ctx.l() {
            return Err(BlockError::BadBase(self.base).into());
        }
        Ok(ctx)
    }

    pub fn engine_config(&self) -> EngineConfig {
        let mut cfg = EngineConfig::default();
        if let Some(b) = self.budget {
            cfg.budget = b;
        }
        cfg
    }
}

pub fn parse_point(s: &str) -> Result<GridPoint, CliError> {
    let bad = || CliError::Usage(format!("grid point {s:?} is not of the form r,j"));
    let (r, j) = s.trim_matches(|c| c == '(' || c == ')').split_once(',').ok_or_else(bad)?;
    Ok(GridPoint::new(r.trim().parse().map_err(|_| bad())?, j.trim().parse().map_err(|_| bad())?))
}

/// Runs one parsed invocation; never panics on bad input.
pub fn run(cli: &Cli) -> Outcome {
    let common = cli.command.common();
    let result = match &cli.command {
        Command::Blocks { common } => commands::blocks(common),
        Command::Tableaux { common, sequence, count_only } => {
            commands::tableaux(common, sequence.as_deref(), *count_only)
        }
        Command::Gtdim { common, concrete, prefix } => commands::gtdim(common, *concrete, *prefix),
        Command::Verify { common, identity, point, dump } => {
            commands::verify(common, identity.as_deref(), point.as_deref(), *dump)
        }
        Command::ExploreQ { common, classes_only, no_concrete, sample, class_cap } => {
            commands::explore(common, *classes_only, !*no_concrete, *sample, *class_cap)
        }
    };
    match result.and_then(|r| r.render(common.format)) {
        Ok(out) => out,
        Err(e) => Outcome { code: e.exit() as i32, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}
