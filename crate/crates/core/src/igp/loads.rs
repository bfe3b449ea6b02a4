use super::ecmp::{merge_sum, Candidate, EcmpTable, SparseLoads};
use crate::error::{Error, Result};
use crate::net_model::{ArcId, NodeId};
use crate::scalar::Scalar;

/// Per-arc load of one SR path carrying a unit demand: `g_ij^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct PathLoadVector<S> {
    pub src: NodeId,
    pub dst: NodeId,
    pub candidate: Candidate,
    pub loads: SparseLoads<S>,
}

impl<S: Scalar> PathLoadVector<S> {
    pub fn support(&self) -> impl Iterator<Item = ArcId> + '_ {
        self.loads.iter().map(|(e, _)| *e)
    }

    pub fn load(&self, arc: ArcId) -> S {
        self.loads
            .binary_search_by_key(&arc, |(e, _)| *e)
            .map(|pos| self.loads[pos].1.clone())
            .unwrap_or_else(|_| S::zero())
    }

    pub fn total(&self) -> S {
        self.loads
            .iter()
            .fold(S::zero(), |acc, (_, l)| acc + l.clone())
    }
}

/// `g_ij^k = f_ik + f_kj`, or `f_ij` for `Direct`. A middlepoint equal to an
/// endpoint is treated as `Direct`.
pub fn sr_path_loads<S: Scalar>(
    src: NodeId,
    dst: NodeId,
    candidate: Candidate,
    ecmp: &EcmpTable<S>,
) -> Result<PathLoadVector<S>> {
    if src == dst {
        return Err(Error::SameEndpoints(src));
    }
    let candidate = candidate.normalized(src, dst);
    let loads = match candidate {
        Candidate::Direct => ecmp.fractions(src, dst).to_vec(),
        Candidate::Via(k) => merge_sum(ecmp.fractions(src, k), ecmp.fractions(k, dst)),
    };
    Ok(PathLoadVector {
        src,
        dst,
        candidate,
        loads,
    })
}
