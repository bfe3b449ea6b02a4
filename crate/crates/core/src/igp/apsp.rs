use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::net_model::{NodeId, Topology};

pub const UNREACHABLE: u64 = u64::MAX;

/// Shortest-path distances, counts and hop lengths from one source, over the
/// topology minus the `blocked` nodes.
#[derive(Debug, Clone)]
pub(crate) struct SingleSource {
    pub dist: Vec<u64>,
    pub sigma: Vec<u128>,
    pub hop: Vec<u32>,
    /// Reachable nodes in non-decreasing distance order, source first.
    pub order: Vec<NodeId>,
}

pub(crate) fn single_source(topo: &Topology, src: NodeId, blocked: Option<&[bool]>) -> SingleSource {
    let n = topo.node_count();
    let is_blocked = |v: NodeId| blocked.is_some_and(|b| b[v]);
    let mut dist = vec![UNREACHABLE; n];
    let mut done = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut heap = BinaryHeap::new();
    dist[src] = 0;
    heap.push(Reverse((0u64, src)));
    while let Some(Reverse((d, v))) = heap.pop() {
        if done[v] || d > dist[v] {
            continue;
        }
        done[v] = true;
        order.push(v);
        for &e in topo.out_arcs(v) {
            let arc = topo.arc(e);
            if is_blocked(arc.dst) {
                continue;
            }
            let nd = d + arc.weight;
            if nd < dist[arc.dst] {
                dist[arc.dst] = nd;
                heap.push(Reverse((nd, arc.dst)));
            }
        }
    }

    let mut sigma = vec![0u128; n];
    let mut hop = vec![u32::MAX; n];
    sigma[src] = 1;
    hop[src] = 0;
    // weights are positive, so every DAG predecessor precedes its successor
    for &v in &order[1..] {
        for &e in topo.in_arcs(v) {
            let arc = topo.arc(e);
            let u = arc.src;
            if dist[u] != UNREACHABLE && !is_blocked(u) && dist[u] + arc.weight == dist[v] {
                sigma[v] += sigma[u];
                hop[v] = hop[v].min(hop[u] + 1);
            }
        }
    }
    SingleSource {
        dist,
        sigma,
        hop,
        order,
    }
}

/// All-pairs IGP distances, shortest-path counts and minimum hop counts.
///
/// Counts are over distinct arc sequences, so parallel equal-weight arcs each
/// contribute their own paths.
#[derive(Debug, Clone, PartialEq)]
pub struct ApspTable {
    n: usize,
    dist: Vec<u64>,
    sigma: Vec<u128>,
    hop: Vec<u32>,
    /// Per source: nodes sorted by distance from it.
    order: Vec<Vec<NodeId>>,
}

impl ApspTable {
    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn dist(&self, i: NodeId, j: NodeId) -> u64 {
        self.dist[i * self.n + j]
    }

    pub fn sigma(&self, i: NodeId, j: NodeId) -> u128 {
        self.sigma[i * self.n + j]
    }

    pub fn hop(&self, i: NodeId, j: NodeId) -> u32 {
        self.hop[i * self.n + j]
    }

    /// All nodes in non-decreasing distance from `src`.
    pub fn order_from(&self, src: NodeId) -> &[NodeId] {
        &self.order[src]
    }

    /// True if `arc` lies on some shortest `i -> j` path.
    pub fn on_shortest_path(&self, topo: &Topology, arc: usize, i: NodeId, j: NodeId) -> bool {
        let a = topo.arc(arc);
        self.dist(i, a.src) + a.weight + self.dist(a.dst, j) == self.dist(i, j)
    }
}

pub fn compute_apsp(topo: &Topology) -> Result<ApspTable> {
    let n = topo.node_count();
    let mut dist = Vec::with_capacity(n * n);
    let mut sigma = Vec::with_capacity(n * n);
    let mut hop = Vec::with_capacity(n * n);
    let mut order = Vec::with_capacity(n);
    for src in 0..n {
        let ss = single_source(topo, src, None);
        if let Some(dst) = ss.dist.iter().position(|&d| d == UNREACHABLE) {
            return Err(Error::Unreachable { src, dst });
        }
        dist.extend_from_slice(&ss.dist);
        sigma.extend_from_slice(&ss.sigma);
        hop.extend_from_slice(&ss.hop);
        order.push(ss.order);
    }
    Ok(ApspTable {
        n,
        dist,
        sigma,
        hop,
        order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn diamond_counts() {
        let apsp = compute_apsp(&fixtures::diamond(1.0)).unwrap();
        assert_eq!(apsp.dist(0, 3), 2);
        assert_eq!(apsp.sigma(0, 3), 2);
        assert_eq!(apsp.hop(0, 3), 2);
        for i in 0..4 {
            assert_eq!(apsp.dist(i, i), 0);
            assert_eq!(apsp.sigma(i, i), 1);
        }
    }

    #[test]
    fn line_counts() {
        let apsp = compute_apsp(&fixtures::line3(1.0)).unwrap();
        assert_eq!(apsp.dist(0, 2), 2);
        assert_eq!(apsp.sigma(0, 2), 1);
    }

    #[test]
    fn parallel_arcs_count_separately() {
        let t = Topology::from_arcs(2, &[(0, 1, 1, 1.0), (0, 1, 1, 1.0), (0, 1, 2, 1.0), (1, 0, 1, 1.0)]).unwrap();
        let apsp = compute_apsp(&t).unwrap();
        assert_eq!(apsp.sigma(0, 1), 2);
    }

    #[test]
    fn hop_prefers_fewest_hops_among_shortest() {
        // 0->2 directly with weight 2, or 0->1->2 with weights 1+1
        let t = Topology::from_links(3, &[(0, 1, 1, 1.0), (1, 2, 1, 1.0), (0, 2, 2, 1.0)]).unwrap();
        let apsp = compute_apsp(&t).unwrap();
        assert_eq!(apsp.dist(0, 2), 2);
        assert_eq!(apsp.sigma(0, 2), 2);
        assert_eq!(apsp.hop(0, 2), 1);
    }

    #[test]
    fn unreachable_is_an_error() {
        let t = Topology::from_arcs(2, &[(0, 1, 1, 1.0)]).unwrap();
        assert!(matches!(compute_apsp(&t), Err(Error::Unreachable { src: 1, dst: 0 })));
    }
}
