use super::CandidateSet;
use crate::error::{Error, Result};

/// Remaining path count after one pipeline stage.
#[derive(Debug, Clone, PartialEq)]
pub struct StageStats {
    pub stage: String,
    pub remaining_paths: usize,
    pub excluded_fraction: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExclusionStats {
    pub total_paths: usize,
    pub remaining_paths: usize,
    pub excluded_fraction: f64,
    pub stages: Vec<StageStats>,
}

fn fraction(total: usize, remaining: usize) -> f64 {
    if total == 0 {
        0.0
    } else {
        1.0 - remaining as f64 / total as f64
    }
}

impl ExclusionStats {
    pub fn new(total_paths: usize, remaining_paths: usize) -> Self {
        Self {
            total_paths,
            remaining_paths,
            excluded_fraction: fraction(total_paths, remaining_paths),
            stages: Vec::new(),
        }
    }

    pub(crate) fn push_stage(&mut self, stage: impl Into<String>, remaining_paths: usize) {
        self.remaining_paths = remaining_paths;
        self.excluded_fraction = fraction(self.total_paths, remaining_paths);
        self.stages.push(StageStats {
            stage: stage.into(),
            remaining_paths,
            excluded_fraction: self.excluded_fraction,
        });
    }
}

/// Share of the paths in `before` that no longer appear in `after`.
pub fn exclusion_stats(before: &CandidateSet, after: &CandidateSet) -> Result<ExclusionStats> {
    let same_demands = before.demand_count() == after.demand_count()
        && before
            .entries()
            .iter()
            .zip(after.entries())
            .all(|(a, b)| a.demand == b.demand && a.src == b.src && a.dst == b.dst);
    if !same_demands {
        return Err(Error::DemandMismatch);
    }
    Ok(ExclusionStats::new(before.path_count(), after.path_count()))
}
