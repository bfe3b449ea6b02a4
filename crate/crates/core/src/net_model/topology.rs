use std::collections::VecDeque;

use crate::error::{Error, Result};

pub type NodeId = usize;
pub type ArcId = usize;

#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub index: NodeId,
    pub label: String,
    /// Coordinates are carried through from the input file and never used.
    pub x: f64,
    pub y: f64,
}

/// One directed arc. Undirected links appear as two arcs.
#[derive(Debug, Clone, PartialEq)]
pub struct Arc {
    pub index: ArcId,
    pub label: String,
    pub src: NodeId,
    pub dst: NodeId,
    pub weight: u64,
    pub capacity: f64,
    /// Parsed for round-tripping only.
    pub delay: f64,
}

/// Directed, weighted, capacitated network. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct Topology {
    nodes: Vec<Node>,
    arcs: Vec<Arc>,
    out_arcs: Vec<Vec<ArcId>>,
    in_arcs: Vec<Vec<ArcId>>,
}

impl Topology {
    /// Builds a topology, checking the structural invariants (index ranges,
    /// positive weights and capacities, no self loops). Connectivity is
    /// checked separately by [`Topology::check_strongly_connected`].
    pub fn new(nodes: Vec<Node>, arcs: Vec<Arc>) -> Result<Self> {
        let n = nodes.len();
        for (i, node) in nodes.iter().enumerate() {
            if node.index != i {
                return Err(Error::InvalidInstance(format!(
                    "node at position {i} has index {}",
                    node.index
                )));
            }
        }
        let mut out_arcs = vec![Vec::new(); n];
        let mut in_arcs = vec![Vec::new(); n];
        for (e, arc) in arcs.iter().enumerate() {
            if arc.index != e {
                return Err(Error::InvalidInstance(format!(
                    "arc at position {e} has index {}",
                    arc.index
                )));
            }
            if arc.src >= n || arc.dst >= n {
                return Err(Error::InvalidInstance(format!(
                    "arc {e} references a node outside 0..{n}"
                )));
            }
            if arc.src == arc.dst {
                return Err(Error::InvalidInstance(format!("arc {e} is a self loop")));
            }
            if arc.weight == 0 {
                return Err(Error::InvalidInstance(format!("arc {e} has weight 0")));
            }
            if !(arc.capacity > 0.0 && arc.capacity.is_finite()) {
                return Err(Error::InvalidInstance(format!(
                    "arc {e} has non-positive capacity {}",
                    arc.capacity
                )));
            }
            out_arcs[arc.src].push(e);
            in_arcs[arc.dst].push(e);
        }
        Ok(Self {
            nodes,
            arcs,
            out_arcs,
            in_arcs,
        })
    }

    /// Unlabelled topology from `(src, dst, weight, capacity)` arcs. Nodes are
    /// labelled by their index.
    pub fn from_arcs(n: usize, arcs: &[(NodeId, NodeId, u64, f64)]) -> Result<Self> {
        let nodes = (0..n)
            .map(|i| Node {
                index: i,
                label: i.to_string(),
                x: 0.0,
                y: 0.0,
            })
            .collect();
        let arcs = arcs
            .iter()
            .enumerate()
            .map(|(e, &(src, dst, weight, capacity))| Arc {
                index: e,
                label: format!("edge_{e}"),
                src,
                dst,
                weight,
                capacity,
                delay: 0.0,
            })
            .collect();
        Self::new(nodes, arcs)
    }

    /// Like [`Topology::from_arcs`] but every link is added in both
    /// directions, forward arc first.
    pub fn from_links(n: usize, links: &[(NodeId, NodeId, u64, f64)]) -> Result<Self> {
        let arcs: Vec<_> = links
            .iter()
            .flat_map(|&(u, v, w, c)| [(u, v, w, c), (v, u, w, c)])
            .collect();
        Self::from_arcs(n, &arcs)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, e: ArcId) -> &Arc {
        &self.arcs[e]
    }

    pub fn out_arcs(&self, v: NodeId) -> &[ArcId] {
        &self.out_arcs[v]
    }

    pub fn in_arcs(&self, v: NodeId) -> &[ArcId] {
        &self.in_arcs[v]
    }

    /// Copy with every capacity multiplied by `factor`.
    pub fn with_scaled_capacities(&self, factor: f64) -> Result<Self> {
        let arcs = self
            .arcs
            .iter()
            .map(|a| Arc {
                capacity: a.capacity * factor,
                ..a.clone()
            })
            .collect();
        Self::new(self.nodes.clone(), arcs)
    }

    pub fn check_strongly_connected(&self) -> Result<()> {
        let n = self.node_count();
        if n == 0 {
            return Ok(());
        }
        let forward = self.reach(0, true);
        if let Some(to) = forward.iter().position(|&r| !r) {
            return Err(Error::NotStronglyConnected { from: 0, to });
        }
        let backward = self.reach(0, false);
        if let Some(from) = backward.iter().position(|&r| !r) {
            return Err(Error::NotStronglyConnected { from, to: 0 });
        }
        Ok(())
    }

    fn reach(&self, root: NodeId, forward: bool) -> Vec<bool> {
        let mut seen = vec![false; self.node_count()];
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(v) = queue.pop_front() {
            let arcs = if forward {
                &self.out_arcs[v]
            } else {
                &self.in_arcs[v]
            };
            for &e in arcs {
                let next = if forward {
                    self.arcs[e].dst
                } else {
                    self.arcs[e].src
                };
                if !seen[next] {
                    seen[next] = true;
                    queue.push_back(next);
                }
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_self_loops_and_bad_values() {
        assert!(Topology::from_arcs(2, &[(0, 0, 1, 1.0)]).is_err());
        assert!(Topology::from_arcs(2, &[(0, 1, 0, 1.0)]).is_err());
        assert!(Topology::from_arcs(2, &[(0, 1, 1, 0.0)]).is_err());
        assert!(Topology::from_arcs(2, &[(0, 2, 1, 1.0)]).is_err());
    }

    #[test]
    fn parallel_arcs_are_kept() {
        let t = Topology::from_arcs(2, &[(0, 1, 1, 1.0), (0, 1, 1, 2.0), (1, 0, 1, 1.0)]).unwrap();
        assert_eq!(t.out_arcs(0), &[0, 1]);
        t.check_strongly_connected().unwrap();
    }

    #[test]
    fn detects_one_way_reachability() {
        let t = Topology::from_arcs(3, &[(0, 1, 1, 1.0), (1, 2, 1, 1.0), (2, 1, 1, 1.0)]).unwrap();
        assert!(matches!(
            t.check_strongly_connected(),
            Err(Error::NotStronglyConnected { from: 1, to: 0 })
        ));
    }
}
