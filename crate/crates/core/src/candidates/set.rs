use std::fmt::Write as _;

use crate::igp::Candidate;
use crate::net_model::{DemandId, NodeId, Topology, TrafficMatrix};

/// Admissible SR paths of one demand, sorted with `Direct` first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DemandCandidates {
    pub demand: DemandId,
    pub src: NodeId,
    pub dst: NodeId,
    pub pinned: bool,
    candidates: Vec<Candidate>,
}

impl DemandCandidates {
    pub fn new(
        demand: DemandId,
        src: NodeId,
        dst: NodeId,
        candidates: impl IntoIterator<Item = Candidate>,
    ) -> Self {
        let mut candidates: Vec<_> = candidates
            .into_iter()
            .map(|c| c.normalized(src, dst))
            .collect();
        candidates.sort_unstable();
        candidates.dedup();
        Self {
            demand,
            src,
            dst,
            pinned: false,
            candidates,
        }
    }

    pub fn candidates(&self) -> &[Candidate] {
        &self.candidates
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    pub fn contains(&self, c: Candidate) -> bool {
        self.candidates.binary_search(&c).is_ok()
    }

    /// Keeps the candidates accepted by `keep`; order is preserved.
    pub fn retain(&mut self, keep: impl FnMut(&Candidate) -> bool) {
        self.candidates.retain(keep);
    }

    /// Restricts the demand to its shortest-path route.
    pub fn pin(&mut self) {
        self.pinned = true;
        self.candidates = vec![Candidate::Direct];
    }
}

/// Per-demand candidate middlepoints; entry `i` belongs to demand id `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSet {
    node_count: usize,
    entries: Vec<DemandCandidates>,
}

impl CandidateSet {
    pub fn new(node_count: usize, entries: Vec<DemandCandidates>) -> Self {
        debug_assert!(entries.iter().enumerate().all(|(i, e)| e.demand == i));
        Self {
            node_count,
            entries,
        }
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn entries(&self) -> &[DemandCandidates] {
        &self.entries
    }

    pub fn entries_mut(&mut self) -> &mut [DemandCandidates] {
        &mut self.entries
    }

    pub fn get(&self, demand: DemandId) -> &DemandCandidates {
        &self.entries[demand]
    }

    pub fn demand_count(&self) -> usize {
        self.entries.len()
    }

    /// Number of SR paths left over all demands.
    pub fn path_count(&self) -> usize {
        self.entries.iter().map(DemandCandidates::len).sum()
    }

    pub fn pinned_count(&self) -> usize {
        self.entries.iter().filter(|e| e.pinned).count()
    }

    /// True if every demand's candidates are a subset of the ones in `other`.
    pub fn is_subset_of(&self, other: &CandidateSet) -> bool {
        self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.candidates.iter().all(|&c| b.contains(c)))
    }

    /// CSV dump, header `demand_id,src,dst,candidate`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("demand_id,src,dst,candidate\n");
        for e in &self.entries {
            for c in &e.candidates {
                writeln!(out, "{},{},{},{c}", e.demand, e.src, e.dst).unwrap();
            }
        }
        out
    }
}

/// Every demand gets `Direct` plus all nodes other than its endpoints.
pub fn full_candidates(topo: &Topology, tm: &TrafficMatrix) -> CandidateSet {
    let n = topo.node_count();
    let entries = tm
        .demands()
        .iter()
        .map(|d| {
            DemandCandidates::new(
                d.id,
                d.src,
                d.dst,
                std::iter::once(Candidate::Direct).chain(
                    (0..n)
                        .filter(|&k| k != d.src && k != d.dst)
                        .map(Candidate::Via),
                ),
            )
        })
        .collect();
    CandidateSet::new(n, entries)
}
