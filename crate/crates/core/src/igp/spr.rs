use super::ecmp::{Candidate, EcmpTable};
use super::loads::sr_path_loads;
use crate::net_model::{Demand, Topology, TrafficMatrix};
use crate::scalar::Scalar;

/// Per-arc utilization and its maximum.
#[derive(Debug, Clone, PartialEq)]
pub struct Utilization<S> {
    pub mlu: S,
    pub per_arc: Vec<S>,
}

/// Utilization when every demand follows the candidate picked by `choose`.
pub fn utilization_with<S, F>(
    topo: &Topology,
    tm: &TrafficMatrix,
    ecmp: &EcmpTable<S>,
    mut choose: F,
) -> Utilization<S>
where
    S: Scalar,
    F: FnMut(&Demand) -> Candidate,
{
    let mut load = vec![S::zero(); topo.arc_count()];
    for d in tm.demands() {
        let path = sr_path_loads(d.src, d.dst, choose(d), ecmp).expect("demand endpoints differ");
        let volume = S::from_real(d.volume);
        for (e, g) in path.loads {
            load[e] = load[e].clone() + volume.clone() * g;
        }
    }
    let per_arc: Vec<S> = load
        .into_iter()
        .zip(topo.arcs())
        .map(|(l, arc)| l / S::from_real(arc.capacity))
        .collect();
    let mlu = per_arc.iter().cloned().fold(S::zero(), S::max_of);
    Utilization { mlu, per_arc }
}

/// Shortest-path routing baseline: every demand on its ECMP route.
pub fn spr_mlu<S: Scalar>(topo: &Topology, tm: &TrafficMatrix, ecmp: &EcmpTable<S>) -> Utilization<S> {
    utilization_with(topo, tm, ecmp, |_| Candidate::Direct)
}
