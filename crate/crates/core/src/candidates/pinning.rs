use super::CandidateSet;
use crate::error::{Error, Result};
use crate::net_model::{DemandId, TrafficMatrix};

/// Demands pinned for a given share: smallest first (ties by id), stopping
/// before the cumulative pinned volume would exceed `alpha * total`.
pub fn pinned_demands(tm: &TrafficMatrix, alpha: f64) -> Vec<DemandId> {
    let mut order: Vec<_> = tm.demands().iter().map(|d| (d.volume, d.id)).collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    // summed in the walk order so that alpha = 1 reaches the total exactly
    let total: f64 = order.iter().map(|(v, _)| v).sum();
    let threshold = alpha * total;
    let mut pinned = Vec::new();
    let mut cumulative = 0.0;
    for (volume, id) in order {
        if cumulative + volume > threshold {
            break;
        }
        cumulative += volume;
        pinned.push(id);
    }
    pinned
}

/// Pins the smallest demands carrying at most `alpha` of the traffic to
/// shortest-path routing.
pub fn demand_pinning_filter(
    cands: &CandidateSet,
    tm: &TrafficMatrix,
    alpha: f64,
) -> Result<CandidateSet> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::Config(format!("pinning share must be in [0, 1], got {alpha}")));
    }
    if cands.demand_count() != tm.len() {
        return Err(Error::DemandMismatch);
    }
    let mut out = cands.clone();
    for id in pinned_demands(tm, alpha) {
        out.entries_mut()[id].pin();
    }
    Ok(out)
}
