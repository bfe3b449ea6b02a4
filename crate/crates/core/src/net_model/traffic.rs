use std::collections::HashSet;

use super::NodeId;
use crate::error::{Error, Result};

pub type DemandId = usize;

#[derive(Debug, Clone, PartialEq)]
pub struct Demand {
    pub id: DemandId,
    pub src: NodeId,
    pub dst: NodeId,
    pub volume: f64,
    pub label: String,
}

/// Demands with at most one entry per ordered `(src, dst)` pair. Ids equal
/// positions, which is the file order for parsed matrices.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrafficMatrix {
    demands: Vec<Demand>,
}

impl TrafficMatrix {
    /// Checks id order and pair uniqueness. Volumes and endpoints are checked
    /// against a topology by `validate_instance`, so a matrix holding a zero
    /// volume can still be built and reported on.
    pub fn new(demands: Vec<Demand>) -> Result<Self> {
        let mut pairs = HashSet::with_capacity(demands.len());
        for (i, d) in demands.iter().enumerate() {
            if d.id != i {
                return Err(Error::InvalidInstance(format!(
                    "demand at position {i} has id {}",
                    d.id
                )));
            }
            if !pairs.insert((d.src, d.dst)) {
                return Err(Error::InvalidInstance(format!(
                    "duplicate demand for pair ({}, {})",
                    d.src, d.dst
                )));
            }
        }
        Ok(Self { demands })
    }

    /// Builds from `(src, dst, volume)` triples, ids in slice order.
    pub fn from_triples(triples: &[(NodeId, NodeId, f64)]) -> Result<Self> {
        Self::new(
            triples
                .iter()
                .enumerate()
                .map(|(id, &(src, dst, volume))| Demand {
                    id,
                    src,
                    dst,
                    volume,
                    label: format!("demand_{id}"),
                })
                .collect(),
        )
    }

    pub fn demands(&self) -> &[Demand] {
        &self.demands
    }

    pub fn len(&self) -> usize {
        self.demands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.demands.is_empty()
    }

    pub fn total_volume(&self) -> f64 {
        self.demands.iter().map(|d| d.volume).sum()
    }

    /// Same demands with volumes multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            demands: self
                .demands
                .iter()
                .map(|d| Demand {
                    volume: d.volume * factor,
                    ..d.clone()
                })
                .collect(),
        }
    }
}
