use std::fmt::{self, Write as _};

use super::ApspTable;
use crate::net_model::{ArcId, NodeId, Topology};
use crate::scalar::Scalar;

/// Sparse per-arc values, sorted by arc id, without zero entries.
pub type SparseLoads<S> = Vec<(ArcId, S)>;

/// Either the plain shortest-path route or a route through one middlepoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Candidate {
    Direct,
    Via(NodeId),
}

impl Candidate {
    /// `Via(src)` and `Via(dst)` collapse to `Direct`.
    pub fn normalized(self, src: NodeId, dst: NodeId) -> Self {
        match self {
            Candidate::Via(k) if k == src || k == dst => Candidate::Direct,
            other => other,
        }
    }
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Candidate::Direct => f.write_str("DIRECT"),
            Candidate::Via(k) => write!(f, "{k}"),
        }
    }
}

impl std::str::FromStr for Candidate {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("direct") {
            return Ok(Candidate::Direct);
        }
        s.parse()
            .map(Candidate::Via)
            .map_err(|_| format!("invalid candidate {s:?}"))
    }
}

/// ECMP split fractions `f_ij(e)` for a unit demand between every ordered
/// node pair.
#[derive(Debug, Clone, PartialEq)]
pub struct EcmpTable<S> {
    n: usize,
    fractions: Vec<SparseLoads<S>>,
}

impl<S: Scalar> EcmpTable<S> {
    pub fn node_count(&self) -> usize {
        self.n
    }

    /// Sparse `f_ij`; empty for `i == j`.
    pub fn fractions(&self, i: NodeId, j: NodeId) -> &[(ArcId, S)] {
        &self.fractions[i * self.n + j]
    }

    pub fn fraction(&self, i: NodeId, j: NodeId, arc: ArcId) -> S {
        let row = self.fractions(i, j);
        row.binary_search_by_key(&arc, |(e, _)| *e)
            .map(|pos| row[pos].1.clone())
            .unwrap_or_else(|_| S::zero())
    }

    /// CSV dump with header `i,j,arc,fraction`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,arc,fraction\n");
        for i in 0..self.n {
            for j in 0..self.n {
                for (e, f) in self.fractions(i, j) {
                    writeln!(out, "{i},{j},{e},{}", f.to_real()).unwrap();
                }
            }
        }
        out
    }
}

/// Propagates one unit of flow from `i` over the shortest-path DAG towards
/// `j`, splitting equally over outgoing DAG arcs at every node.
fn unit_flow<S: Scalar>(topo: &Topology, apsp: &ApspTable, i: NodeId, j: NodeId) -> SparseLoads<S> {
    if i == j {
        return Vec::new();
    }
    let n = topo.node_count();
    let total = apsp.dist(i, j);
    let mut inflow: Vec<Option<S>> = vec![None; n];
    inflow[i] = Some(S::one());
    let mut loads = Vec::new();
    let mut dag_out = Vec::new();
    for &u in apsp.order_from(i) {
        if apsp.dist(i, u) >= total {
            break;
        }
        let Some(flow) = inflow[u].take() else {
            continue;
        };
        dag_out.clear();
        dag_out.extend(topo.out_arcs(u).iter().copied().filter(|&e| {
            let arc = topo.arc(e);
            apsp.dist(i, u) + arc.weight + apsp.dist(arc.dst, j) == total
        }));
        let share = flow / S::from_count(dag_out.len() as u128);
        for &e in &dag_out {
            let v = topo.arc(e).dst;
            loads.push((e, share.clone()));
            inflow[v] = Some(match inflow[v].take() {
                Some(acc) => acc + share.clone(),
                None => share.clone(),
            });
        }
    }
    loads.sort_by_key(|(e, _)| *e);
    loads
}

pub fn compute_ecmp_fractions<S: Scalar>(topo: &Topology, apsp: &ApspTable) -> EcmpTable<S> {
    let n = topo.node_count();
    let mut fractions = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            fractions.push(unit_flow(topo, apsp, i, j));
        }
    }
    EcmpTable { n, fractions }
}

/// Arcwise sum of two sorted sparse vectors.
pub fn merge_sum<S: Scalar>(a: &[(ArcId, S)], b: &[(ArcId, S)]) -> SparseLoads<S> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut x, mut y) = (0, 0);
    while x < a.len() && y < b.len() {
        match a[x].0.cmp(&b[y].0) {
            std::cmp::Ordering::Less => {
                out.push(a[x].clone());
                x += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[y].clone());
                y += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[x].0, a[x].1.clone() + b[y].1.clone()));
                x += 1;
                y += 1;
            }
        }
    }
    out.extend_from_slice(&a[x..]);
    out.extend_from_slice(&b[y..]);
    out
}
