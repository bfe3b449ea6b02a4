//! Group shortest-path (GSP) centrality and middlepoint restriction to a
//! central node group.

use super::CandidateSet;
use crate::error::{Error, Result};
use crate::igp::{single_source, ApspTable, Candidate};
use crate::net_model::{NodeId, Topology};
use crate::scalar::Scalar;

/// Sum over ordered pairs `s != t` outside `group` of the share of shortest
/// `s -> t` paths that visit a group node.
///
/// Paths avoiding the group are counted in the topology with the group
/// removed, keeping only those of the original shortest length.
pub fn group_gsp_centrality<S: Scalar>(topo: &Topology, apsp: &ApspTable, group: &[NodeId]) -> S {
    let n = topo.node_count();
    let mut blocked = vec![false; n];
    for &g in group {
        blocked[g] = true;
    }
    if !blocked.iter().any(|&b| b) {
        return S::zero();
    }
    let mut total = S::zero();
    for s in (0..n).filter(|&s| !blocked[s]) {
        let avoid = single_source(topo, s, Some(&blocked));
        for t in (0..n).filter(|&t| t != s && !blocked[t]) {
            let sigma = apsp.sigma(s, t);
            let avoiding = if avoid.dist[t] == apsp.dist(s, t) {
                avoid.sigma[t]
            } else {
                0
            };
            let through = sigma - avoiding;
            if through > 0 {
                total = total + S::from_count(through) / S::from_count(sigma);
            }
        }
    }
    total
}

/// Greedy group growth: each step adds the node with the largest group
/// centrality after insertion, smallest index on ties. The returned group is
/// in insertion order.
pub fn greedy_centrality_group<S: Scalar>(
    topo: &Topology,
    apsp: &ApspTable,
    size: usize,
) -> Result<Vec<NodeId>> {
    let n = topo.node_count();
    if size == 0 || size > n {
        return Err(Error::GroupSize { size, nodes: n });
    }
    let mut group: Vec<NodeId> = Vec::with_capacity(size);
    let mut in_group = vec![false; n];
    while group.len() < size {
        let mut best: Option<(NodeId, S)> = None;
        for v in (0..n).filter(|&v| !in_group[v]) {
            group.push(v);
            let value: S = group_gsp_centrality(topo, apsp, &group);
            group.pop();
            let better = match &best {
                None => true,
                Some((_, b)) => b.definitely_lt(&value),
            };
            if better {
                best = Some((v, value));
            }
        }
        let (v, _) = best.expect("a node outside the group exists");
        in_group[v] = true;
        group.push(v);
    }
    Ok(group)
}

/// Unpinned demands keep `Direct` plus the group members among their
/// candidates.
pub fn centrality_filter(cands: &CandidateSet, group: &[NodeId]) -> CandidateSet {
    let mut in_group = vec![false; cands.node_count()];
    for &g in group {
        in_group[g] = true;
    }
    let mut out = cands.clone();
    for entry in out.entries_mut().iter_mut().filter(|e| !e.pinned) {
        entry.retain(|c| match *c {
            Candidate::Direct => true,
            Candidate::Via(k) => in_group[k],
        });
    }
    out
}
