use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::milp::{SolveStatus, SrSolution};

/// Environment variable overriding the external solver command template.
pub const SOLVER_CMD_ENV: &str = "SRTE_SOLVER_CMD";

/// HiGHS adapter shipped in `scripts/`. Placeholders: `{model}`, `{solution}`,
/// `{start}` (a feasible start in listing syntax), `{gap}`, `{time_limit}`,
/// `{threads}`.
pub const DEFAULT_COMMAND: &str = concat!(
    "python3 ",
    env!("CARGO_MANIFEST_DIR"),
    "/../../scripts/highs_solve.py {model} {solution} --start {start} --gap {gap} --time-limit {time_limit} --threads {threads}"
);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    /// MILP solver run as a subprocess on an LP file.
    External,
    /// Embedded branch and bound, exact but only for small instances.
    Exact,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::External => "external",
            Backend::Exact => "exact",
        })
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "external" => Ok(Backend::External),
            "exact" => Ok(Backend::Exact),
            other => Err(Error::Config(format!("unknown backend {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub backend: Backend,
    pub command: String,
    /// Relative optimality gap passed to the external solver.
    pub gap: f64,
    /// Seconds.
    pub time_limit: f64,
    pub threads: usize,
    /// Branch-and-bound node budget of the exact backend.
    pub node_limit: u64,
}

impl Default for SolverConfig {
    /// External backend; the command comes from `SRTE_SOLVER_CMD` when set.
    fn default() -> Self {
        Self {
            backend: Backend::External,
            command: std::env::var(SOLVER_CMD_ENV).unwrap_or_else(|_| DEFAULT_COMMAND.to_string()),
            gap: 1e-4,
            time_limit: 3600.0,
            threads: 1,
            node_limit: 100_000_000,
        }
    }
}

impl SolverConfig {
    pub fn exact() -> Self {
        Self {
            backend: Backend::Exact,
            ..Self::default()
        }
    }

    pub fn with_gap(mut self, gap: f64) -> Self {
        self.gap = gap;
        self
    }

    pub fn with_time_limit(mut self, seconds: f64) -> Self {
        self.time_limit = seconds;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=0.1).contains(&self.gap) {
            return Err(Error::Config(format!("gap {} outside [0, 0.1]", self.gap)));
        }
        if !(self.time_limit > 0.0) {
            return Err(Error::Config("time limit must be positive".into()));
        }
        if self.threads == 0 {
            return Err(Error::Config("threads must be at least 1".into()));
        }
        if self.backend == Backend::External && self.command.split_whitespace().next().is_none() {
            return Err(Error::Config("empty solver command".into()));
        }
        Ok(())
    }

    /// Argument vector with placeholders substituted. Tokens are split on
    /// whitespace; no shell is involved.
    pub fn command_line(&self, model: &str, solution: &str, start: &str) -> Vec<String> {
        self.command
            .split_whitespace()
            .map(|token| {
                token
                    .replace("{model}", model)
                    .replace("{solution}", solution)
                    .replace("{start}", start)
                    .replace("{gap}", &self.gap.to_string())
                    .replace("{time_limit}", &self.time_limit.to_string())
                    .replace("{threads}", &self.threads.to_string())
            })
            .collect()
    }
}

/// Outcome of one solve.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub solution: Option<SrSolution>,
    /// Wall-clock seconds spent solving.
    pub solve_time: f64,
    /// Seconds spent building candidate sets, filled in by the caller.
    pub preprocess_time: f64,
    pub status: SolveStatus,
}

impl SolveReport {
    pub fn theta(&self) -> Option<f64> {
        self.solution.as_ref().map(|s| s.theta)
    }

    /// A verified solution is present.
    pub fn is_solved(&self) -> bool {
        self.solution.is_some()
            && matches!(
                self.status,
                SolveStatus::Optimal | SolveStatus::GapLimit | SolveStatus::TimeLimit
            )
    }
}
