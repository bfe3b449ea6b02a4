use super::CandidateSet;
use crate::error::{Error, Result};
use crate::igp::{ApspTable, Candidate};
use crate::net_model::NodeId;

/// Detour ratio `(dist(s,m) + dist(m,t)) / dist(s,t)` within `alpha`.
pub fn within_stretch(apsp: &ApspTable, s: NodeId, m: NodeId, t: NodeId, alpha: f64) -> bool {
    if alpha == f64::INFINITY {
        return true;
    }
    let detour = (apsp.dist(s, m) + apsp.dist(m, t)) as f64;
    detour / apsp.dist(s, t) as f64 <= alpha
}

/// Keeps middlepoints within the stretch bound; `Direct` always stays.
///
/// With `one_hop_extension`, demands whose shortest path is a single hop also
/// keep every middlepoint `m` for which both `s -> m` and `m -> t` are
/// single-hop shortest paths, whatever `alpha` is.
pub fn stretch_bounding_filter(
    cands: &CandidateSet,
    apsp: &ApspTable,
    alpha: f64,
    one_hop_extension: bool,
) -> Result<CandidateSet> {
    if alpha.is_nan() || alpha < 1.0 {
        return Err(Error::Config(format!("stretch factor must be >= 1, got {alpha}")));
    }
    let mut out = cands.clone();
    for entry in out.entries_mut() {
        let (s, t) = (entry.src, entry.dst);
        let extend = one_hop_extension && apsp.hop(s, t) == 1;
        entry.retain(|c| match *c {
            Candidate::Direct => true,
            Candidate::Via(m) => {
                within_stretch(apsp, s, m, t, alpha)
                    || (extend && apsp.hop(s, m) == 1 && apsp.hop(m, t) == 1)
            }
        });
    }
    Ok(out)
}
