#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

use num_traits::Zero;
use srte_core::candidates::CandidateSet;
use srte_core::igp::{Candidate, EcmpTable};
use srte_core::net_model::{synth, Topology, TrafficMatrix};
use srte_core::{Exact, Instance64};

pub fn instance(topo: Topology, tm: TrafficMatrix) -> Instance64 {
    Instance64::new("test", topo, tm).expect("valid instance")
}

/// Random backbone with unit or palette capacities, chosen by the seed.
pub fn backbone(n: usize, seed: u64) -> Topology {
    let caps = if seed % 2 == 0 {
        synth::Capacities::Unit
    } else {
        synth::Capacities::Heterogeneous
    };
    synth::random_backbone_with(n, 1.5, caps, seed).expect("generator succeeds")
}

/// Arc loads of one SR path straight from the ECMP table.
fn path_loads(ecmp: &EcmpTable<f64>, src: usize, dst: usize, c: Candidate, out: &mut [f64], volume: f64) {
    let legs: Vec<(usize, usize)> = match c {
        Candidate::Via(k) if k != src && k != dst => vec![(src, k), (k, dst)],
        _ => vec![(src, dst)],
    };
    for (a, b) in legs {
        for (e, f) in ecmp.fractions(a, b) {
            out[*e] += volume * f;
        }
    }
}

pub fn mlu(topo: &Topology, tm: &TrafficMatrix, ecmp: &EcmpTable<f64>, assignment: &[Candidate]) -> f64 {
    let mut load = vec![0.0; topo.arc_count()];
    for d in tm.demands() {
        path_loads(ecmp, d.src, d.dst, assignment[d.id], &mut load, d.volume);
    }
    load.iter()
        .zip(topo.arcs())
        .map(|(l, a)| l / a.capacity)
        .fold(0.0, f64::max)
}

/// Minimum MLU over every combination of candidates.
pub fn enumerate_optimum(
    topo: &Topology,
    tm: &TrafficMatrix,
    cands: &CandidateSet,
    ecmp: &EcmpTable<f64>,
) -> (f64, Vec<Candidate>) {
    let options: Vec<&[Candidate]> = cands.entries().iter().map(|e| e.candidates()).collect();
    let mut index = vec![0usize; options.len()];
    let mut best = (f64::INFINITY, Vec::new());
    loop {
        let assignment: Vec<Candidate> = index.iter().zip(&options).map(|(&i, o)| o[i]).collect();
        let value = mlu(topo, tm, ecmp, &assignment);
        if value < best.0 {
            best = (value, assignment);
        }
        let mut pos = 0;
        loop {
            if pos == index.len() {
                return best;
            }
            index[pos] += 1;
            if index[pos] < options[pos].len() {
                break;
            }
            index[pos] = 0;
            pos += 1;
        }
    }
}

/// Strongly connected random graph: a bidirectional random tree plus extra
/// links, weights in `1..=max_weight`, sometimes a parallel link.
pub fn weighted_graph(n: usize, extra: usize, max_weight: u64, seed: u64) -> Topology {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut links = Vec::new();
    for v in 1..n {
        let u = rng.random_range(0..v);
        links.push((u, v, rng.random_range(1..=max_weight), 10.0));
    }
    for _ in 0..extra {
        let a = rng.random_range(0..n);
        let b = rng.random_range(0..n);
        if a != b {
            links.push((a, b, rng.random_range(1..=max_weight), 10.0));
        }
    }
    Topology::from_links(n, &links).expect("valid links")
}

/// Every shortest `s -> t` path as an arc sequence, found by exhaustive
/// search over simple paths. Also returns the distance.
pub fn shortest_paths(topo: &Topology, s: usize, t: usize) -> (u64, Vec<Vec<usize>>) {
    fn walk(
        topo: &Topology,
        v: usize,
        t: usize,
        length: u64,
        visited: &mut Vec<bool>,
        path: &mut Vec<usize>,
        best: &mut (u64, Vec<Vec<usize>>),
    ) {
        if length > best.0 {
            return;
        }
        if v == t {
            if length < best.0 {
                *best = (length, Vec::new());
            }
            best.1.push(path.clone());
            return;
        }
        for &e in topo.out_arcs(v) {
            let arc = topo.arc(e);
            if visited[arc.dst] {
                continue;
            }
            visited[arc.dst] = true;
            path.push(e);
            walk(topo, arc.dst, t, length + arc.weight, visited, path, best);
            path.pop();
            visited[arc.dst] = false;
        }
    }
    let mut visited = vec![false; topo.node_count()];
    visited[s] = true;
    let mut best = (u64::MAX, Vec::new());
    walk(topo, s, t, 0, &mut visited, &mut Vec::new(), &mut best);
    best
}

/// ECMP fractions from explicit path enumeration: every shortest path
/// carries the product of 1/(number of shortest-path arcs leaving u) over
/// its nodes u.
pub fn enumerated_fractions(topo: &Topology, s: usize, t: usize) -> BTreeMap<usize, f64> {
    let (_, paths) = shortest_paths(topo, s, t);
    let arcs: HashSet<usize> = paths.iter().flatten().copied().collect();
    let fanout = |u: usize| topo.out_arcs(u).iter().filter(|e| arcs.contains(e)).count() as f64;
    let mut f = BTreeMap::new();
    for path in &paths {
        let share: f64 = path.iter().map(|&e| 1.0 / fanout(topo.arc(e).src)).product();
        for &e in path {
            *f.entry(e).or_insert(0.0) += share;
        }
    }
    f
}

/// Group shortest-path centrality by explicit path enumeration: the share of
/// shortest paths between outside pairs that visit a group node.
pub fn brute_gsp(topo: &Topology, group: &[usize]) -> Exact {
    let n = topo.node_count();
    let mut total = Exact::zero();
    for s in (0..n).filter(|v| !group.contains(v)) {
        for t in (0..n).filter(|&v| v != s && !group.contains(&v)) {
            let (_, paths) = shortest_paths(topo, s, t);
            let through = paths
                .iter()
                .filter(|p| p.iter().any(|&e| group.contains(&topo.arc(e).dst)))
                .count();
            total += Exact::new(through.into(), paths.len().into());
        }
    }
    total
}
