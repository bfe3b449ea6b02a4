//! Solving backends: an external MILP solver run as a subprocess and an
//! embedded exact branch and bound.

mod config;
mod external;
mod oracle;

pub use config::{Backend, SolveReport, SolverConfig, DEFAULT_COMMAND, SOLVER_CMD_ENV};
pub use external::solve_external;
pub use oracle::{solve_exact_oracle, OracleOutcome, OracleProblem};

use crate::candidates::CandidateSet;
use crate::error::Result;
use crate::igp::EcmpTable;
use crate::milp::build_model;
use crate::net_model::{Topology, TrafficMatrix};
use crate::scalar::Scalar;

/// Solves the 2SR problem over `cands` with the configured backend.
pub fn solve<S: Scalar>(
    topo: &Topology,
    tm: &TrafficMatrix,
    cands: &CandidateSet,
    ecmp: &EcmpTable<S>,
    config: &SolverConfig,
) -> Result<SolveReport> {
    match config.backend {
        Backend::External => solve_external(&build_model(topo, tm, cands, ecmp)?, config),
        Backend::Exact => solve_exact_oracle(topo, tm, cands, ecmp, config),
    }
}
