use crate::candidates::CandidateSet;
use crate::error::{Error, Result};
use crate::igp::{sr_path_loads, Candidate, EcmpTable};
use crate::net_model::{ArcId, DemandId, Topology, TrafficMatrix};
use crate::scalar::Scalar;

/// Binary variable selecting `candidate` for `demand`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VarKey {
    pub demand: DemandId,
    pub candidate: Candidate,
}

impl VarKey {
    /// `x_d<demand>_m<node>` or `x_d<demand>_mdir`.
    pub fn name(&self) -> String {
        match self.candidate {
            Candidate::Direct => format!("x_d{}_mdir", self.demand),
            Candidate::Via(k) => format!("x_d{}_m{k}", self.demand),
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        let rest = name.strip_prefix("x_d")?;
        let (demand, middle) = rest.split_once("_m")?;
        let candidate = match middle {
            "dir" => Candidate::Direct,
            k => Candidate::Via(k.parse().ok()?),
        };
        Some(Self {
            demand: demand.parse().ok()?,
            candidate,
        })
    }
}

/// `sum_k x(demand, k) = 1` over the variables in `vars`.
#[derive(Debug, Clone, PartialEq)]
pub struct AssignmentRow {
    pub demand: DemandId,
    pub vars: std::ops::Range<usize>,
}

/// `sum terms - capacity * theta <= -pinned_load`.
#[derive(Debug, Clone, PartialEq)]
pub struct CapacityRow {
    pub arc: ArcId,
    /// `(variable index, t_ij * g_ij^k(arc))`, all positive.
    pub terms: Vec<(usize, f64)>,
    pub capacity: f64,
    /// Load of pinned demands on this arc.
    pub pinned_load: f64,
}

/// Binary 2SR model: minimize the maximum link utilization `theta` over one
/// SR path per demand.
#[derive(Debug, Clone, PartialEq)]
pub struct MilpModel {
    pub demand_count: usize,
    pub vars: Vec<VarKey>,
    pub assignment_rows: Vec<AssignmentRow>,
    pub capacity_rows: Vec<CapacityRow>,
    /// Demands routed on their shortest path and folded into the constants.
    pub pinned: Vec<DemandId>,
}

impl MilpModel {
    pub fn binary_count(&self) -> usize {
        self.vars.len()
    }

    pub fn row_count(&self) -> usize {
        self.assignment_rows.len() + self.capacity_rows.len()
    }

    pub fn var_index(&self, key: &VarKey) -> Option<usize> {
        let row = self
            .assignment_rows
            .binary_search_by_key(&key.demand, |r| r.demand)
            .ok()?;
        let range = self.assignment_rows[row].vars.clone();
        self.vars[range.clone()]
            .iter()
            .position(|v| v.candidate == key.candidate)
            .map(|p| range.start + p)
    }

    /// Maximum utilization of an assignment (indexed by demand id), evaluated
    /// from the capacity rows. `None` if a choice has no variable.
    pub fn utilization_of(&self, assignment: &[Candidate]) -> Option<f64> {
        let mut selected = vec![false; self.vars.len()];
        for row in &self.assignment_rows {
            let choice = *assignment.get(row.demand)?;
            let v = row.vars.clone().find(|&v| self.vars[v].candidate == choice)?;
            selected[v] = true;
        }
        let mlu = self
            .capacity_rows
            .iter()
            .map(|r| {
                let load: f64 = r.terms.iter().filter(|(v, _)| selected[*v]).map(|(_, c)| c).sum();
                (load + r.pinned_load) / r.capacity
            })
            .fold(0.0, f64::max);
        Some(mlu)
    }

    /// Feasible starting point, indexed by demand id: every demand on its
    /// direct candidate when it has one, otherwise on its first candidate.
    pub fn start_assignment(&self) -> Vec<Candidate> {
        let mut assignment = vec![Candidate::Direct; self.demand_count];
        for row in &self.assignment_rows {
            let vars = &self.vars[row.vars.clone()];
            if let Some(first) = vars.first().filter(|_| vars.iter().all(|v| v.candidate != Candidate::Direct)) {
                assignment[row.demand] = first.candidate;
            }
        }
        assignment
    }

    /// Utilization lower bound implied by the pinned demands alone.
    pub fn pinned_mlu(&self) -> f64 {
        self.capacity_rows
            .iter()
            .map(|r| r.pinned_load / r.capacity)
            .fold(0.0, f64::max)
    }
}

/// Builds the model over the candidate sets. Pinned demands do not get
/// variables; their shortest-path load is added to the capacity rows as a
/// constant. Zero coefficients are omitted.
pub fn build_model<S: Scalar>(
    topo: &Topology,
    tm: &TrafficMatrix,
    cands: &CandidateSet,
    ecmp: &EcmpTable<S>,
) -> Result<MilpModel> {
    if cands.demand_count() != tm.len() {
        return Err(Error::DemandMismatch);
    }
    let m = topo.arc_count();
    let mut vars = Vec::with_capacity(cands.path_count());
    let mut assignment_rows = Vec::new();
    let mut terms: Vec<Vec<(usize, f64)>> = vec![Vec::new(); m];
    let mut pinned_load = vec![0.0; m];
    let mut pinned = Vec::new();

    for (demand, entry) in tm.demands().iter().zip(cands.entries()) {
        if entry.demand != demand.id || entry.src != demand.src || entry.dst != demand.dst {
            return Err(Error::DemandMismatch);
        }
        if entry.is_empty() {
            return Err(Error::EmptyCandidates(demand.id));
        }
        if entry.pinned {
            pinned.push(demand.id);
            for (e, g) in sr_path_loads(demand.src, demand.dst, Candidate::Direct, ecmp)?.loads {
                pinned_load[e] += demand.volume * g.to_real();
            }
            continue;
        }
        let start = vars.len();
        for &candidate in entry.candidates() {
            let index = vars.len();
            vars.push(VarKey {
                demand: demand.id,
                candidate,
            });
            for (e, g) in sr_path_loads(demand.src, demand.dst, candidate, ecmp)?.loads {
                let coefficient = demand.volume * g.to_real();
                if coefficient != 0.0 {
                    terms[e].push((index, coefficient));
                }
            }
        }
        assignment_rows.push(AssignmentRow {
            demand: demand.id,
            vars: start..vars.len(),
        });
    }

    let capacity_rows = terms
        .into_iter()
        .zip(pinned_load)
        .zip(topo.arcs())
        .map(|((terms, pinned_load), arc)| CapacityRow {
            arc: arc.index,
            terms,
            capacity: arc.capacity,
            pinned_load,
        })
        .collect();
    Ok(MilpModel {
        demand_count: tm.len(),
        vars,
        assignment_rows,
        capacity_rows,
        pinned,
    })
}
