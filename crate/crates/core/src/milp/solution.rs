use std::fmt;
use std::str::FromStr;

use super::{MilpModel, VarKey};
use crate::candidates::CandidateSet;
use crate::error::{Error, Result};
use crate::igp::{utilization_with, Candidate, EcmpTable, Utilization};
use crate::net_model::{Topology, TrafficMatrix};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolveStatus {
    Optimal,
    GapLimit,
    TimeLimit,
    Infeasible,
    Error,
}

impl SolveStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveStatus::Optimal => "optimal",
            SolveStatus::GapLimit => "gap-limit",
            SolveStatus::TimeLimit => "time-limit",
            SolveStatus::Infeasible => "infeasible",
            SolveStatus::Error => "error",
        }
    }
}

impl fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SolveStatus {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "optimal" => Ok(SolveStatus::Optimal),
            "gap-limit" => Ok(SolveStatus::GapLimit),
            "time-limit" => Ok(SolveStatus::TimeLimit),
            "infeasible" => Ok(SolveStatus::Infeasible),
            "error" => Ok(SolveStatus::Error),
            other => Err(Error::SolverStatus(other.to_string())),
        }
    }
}

/// One SR path per demand plus the resulting maximum link utilization.
#[derive(Debug, Clone, PartialEq)]
pub struct SrSolution {
    /// Indexed by demand id.
    pub assignment: Vec<Candidate>,
    pub theta: f64,
    pub status: SolveStatus,
    pub reported_objective: f64,
    /// Relative gap reported by the solver, if any.
    pub reported_gap: Option<f64>,
    pub wall_time: f64,
}

impl SrSolution {
    /// Every demand's choice belongs to its candidate set.
    pub fn respects(&self, cands: &CandidateSet) -> bool {
        self.assignment.len() == cands.demand_count()
            && self
                .assignment
                .iter()
                .zip(cands.entries())
                .all(|(&c, e)| e.contains(c))
    }
}

fn listing_err(line: usize, message: impl Into<String>) -> Error {
    Error::Listing {
        line,
        message: message.into(),
    }
}

/// Reads a solution listing:
///
/// ```text
/// objective 0.5
/// status optimal
/// gap 0
/// theta 0.5
/// x_d0_mdir 1
/// ```
///
/// Only the objective line is mandatory in the header. Binaries are rounded at
/// 0.5 and every unpinned demand must select exactly one candidate; pinned
/// demands are assigned `Direct`.
pub fn parse_solution(text: &str, model: &MilpModel) -> Result<SrSolution> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line, first) = lines.next().ok_or_else(|| listing_err(1, "empty listing"))?;
    let objective = match first.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["objective", value] => value
            .parse::<f64>()
            .map_err(|_| listing_err(line, format!("bad objective {value:?}")))?,
        _ => return Err(listing_err(line, "first line must be \"objective <value>\"")),
    };

    let mut status = SolveStatus::Optimal;
    let mut gap = None;
    let mut values = vec![None; model.vars.len()];
    for (line, text) in lines {
        let fields: Vec<_> = text.split_whitespace().collect();
        let [name, value] = fields.as_slice() else {
            return Err(listing_err(line, "expected \"<name> <value>\""));
        };
        match *name {
            "status" => status = value.parse()?,
            "gap" => {
                gap = Some(value.parse::<f64>().map_err(|_| listing_err(line, "bad gap"))?)
            }
            "objective" | "theta" => {}
            var => {
                let value: f64 = value
                    .parse()
                    .map_err(|_| listing_err(line, format!("bad value {value:?}")))?;
                if let Some(index) = VarKey::parse(var).and_then(|key| model.var_index(&key)) {
                    values[index] = Some(value);
                }
            }
        }
    }
    match status {
        SolveStatus::Infeasible => return Err(Error::Infeasible),
        SolveStatus::Error => return Err(Error::SolverStatus(status.to_string())),
        _ => {}
    }
    if !objective.is_finite() {
        return Err(Error::SolverStatus(format!("{status} without a solution")));
    }

    let mut assignment = vec![Candidate::Direct; model.demand_count];
    for row in &model.assignment_rows {
        let mut chosen = None;
        for v in row.vars.clone() {
            let value = values[v].ok_or_else(|| Error::MissingVariable(model.vars[v].name()))?;
            if value >= 0.5 {
                if chosen.is_some() {
                    return Err(Error::NonUniqueAssignment(row.demand));
                }
                chosen = Some(model.vars[v].candidate);
            }
        }
        assignment[row.demand] = chosen.ok_or(Error::NoAssignment(row.demand))?;
    }
    Ok(SrSolution {
        assignment,
        theta: objective,
        status,
        reported_objective: objective,
        reported_gap: gap,
        wall_time: 0.0,
    })
}

/// Status line of a listing, if present and well formed.
pub fn listing_status(text: &str) -> Option<SolveStatus> {
    text.lines().find_map(|l| {
        let rest = l.trim().strip_prefix("status")?;
        rest.trim().parse().ok()
    })
}

/// Utilization of a complete assignment, computed from the ECMP table alone.
pub fn evaluate_assignment_mlu<S: Scalar>(
    topo: &Topology,
    tm: &TrafficMatrix,
    assignment: &[Candidate],
    ecmp: &EcmpTable<S>,
) -> Utilization<S> {
    utilization_with(topo, tm, ecmp, |d| assignment[d.id])
}
