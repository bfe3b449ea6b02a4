use std::collections::HashMap;
use std::fmt;

use super::{Topology, TrafficMatrix};
use crate::error::Error;

/// Findings of [`validate_instance`]. Empty means the instance is admissible.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub findings: Vec<String>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.findings.is_empty()
    }

    pub fn contains(&self, needle: &str) -> bool {
        self.findings.iter().any(|f| f.contains(needle))
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.findings.is_empty() {
            return writeln!(f, "ok");
        }
        for finding in &self.findings {
            writeln!(f, "{finding}")?;
        }
        Ok(())
    }
}

/// Collects every invariant violation of the instance instead of stopping at
/// the first one.
pub fn validate_instance(topo: &Topology, tm: &TrafficMatrix) -> ValidationReport {
    let mut findings = Vec::new();
    let n = topo.node_count();

    for arc in topo.arcs() {
        if arc.weight == 0 {
            findings.push(format!("non-positive weight, arc {}", arc.index));
        }
        if !(arc.capacity > 0.0) {
            findings.push(format!("non-positive capacity, arc {}", arc.index));
        }
        if arc.src == arc.dst {
            findings.push(format!("self loop, arc {}", arc.index));
        }
    }
    if let Err(Error::NotStronglyConnected { from, to }) = topo.check_strongly_connected() {
        findings.push(format!(
            "graph not strongly connected: node {to} unreachable from node {from}"
        ));
    }

    let mut pairs = HashMap::new();
    for d in tm.demands() {
        if d.src >= n || d.dst >= n {
            findings.push(format!("unknown node, demand {}", d.id));
        }
        if d.src == d.dst {
            findings.push(format!("source equals destination, demand {}", d.id));
        }
        if !(d.volume > 0.0 && d.volume.is_finite()) {
            findings.push(format!("non-positive volume, demand {}", d.id));
        }
        if let Some(first) = pairs.insert((d.src, d.dst), d.id) {
            findings.push(format!(
                "duplicate pair ({}, {}), demands {first} and {}",
                d.src, d.dst, d.id
            ));
        }
    }
    if !tm.is_empty() && !(tm.total_volume() > 0.0) {
        findings.push("total volume is not positive".to_string());
    }
    ValidationReport { findings }
}
