mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;
use srte_core::fixtures;
use srte_core::igp::{compute_apsp, compute_ecmp_fractions, spr_mlu, sr_path_loads, Candidate, EcmpTable};
use srte_core::net_model::{generate_gravity_traffic, synth, Topology};
use srte_core::Exact;

fn small_graphs() -> Vec<Topology> {
    let mut graphs = vec![
        fixtures::diamond(1.0),
        fixtures::heterogeneous_diamond(),
        fixtures::line3(10.0),
        fixtures::triangle(1.0),
        fixtures::triangle_with_stub(1.0),
    ];
    for seed in 0..60 {
        let n = 3 + (seed % 4) as usize;
        graphs.push(common::weighted_graph(n, 2 + (seed % 5) as usize, 1 + seed % 3, seed));
    }
    graphs
}

#[test]
fn ecmp_matches_path_enumeration() {
    for topo in small_graphs() {
        assert!(topo.node_count() <= 6);
        let apsp = compute_apsp(&topo).unwrap();
        let ecmp: EcmpTable<f64> = compute_ecmp_fractions(&topo, &apsp);
        for s in 0..topo.node_count() {
            for t in (0..topo.node_count()).filter(|&t| t != s) {
                let expected = common::enumerated_fractions(&topo, s, t);
                let (dist, paths) = common::shortest_paths(&topo, s, t);
                assert_eq!(apsp.dist(s, t), dist);
                assert_eq!(apsp.sigma(s, t), paths.len() as u128);
                assert_eq!(apsp.hop(s, t) as usize, paths.iter().map(Vec::len).min().unwrap());
                let got = ecmp.fractions(s, t);
                assert_eq!(got.len(), expected.len(), "support {s}->{t}");
                for (e, f) in got {
                    assert!((f - expected[e]).abs() <= 1e-12, "{s}->{t} arc {e}: {f} vs {}", expected[e]);
                }
            }
        }
    }
}

fn check_flow(topo: &Topology, ecmp: &EcmpTable<f64>, s: usize, t: usize) {
    let mut net = vec![0.0; topo.node_count()];
    for &(e, f) in ecmp.fractions(s, t) {
        assert!(f > 0.0 && f <= 1.0 + 1e-12);
        let arc = topo.arc(e);
        net[arc.src] -= f;
        net[arc.dst] += f;
    }
    for (v, balance) in net.iter().enumerate() {
        let expected = if v == s { -1.0 } else if v == t { 1.0 } else { 0.0 };
        assert!((balance - expected).abs() <= 1e-9, "{s}->{t} node {v}: {balance}");
    }
    let into_t: f64 = ecmp.fractions(s, t).iter().filter(|(e, _)| topo.arc(*e).dst == t).map(|(_, f)| f).sum();
    assert!((into_t - 1.0).abs() <= 1e-9);
}

#[test]
fn conservation_up_to_200_nodes() {
    let mut graphs = small_graphs();
    graphs.push(synth::star_of_stars(3, 15).unwrap());
    for (n, seed) in [(50, 1), (120, 2), (200, 3)] {
        graphs.push(synth::random_backbone(n, 1.8, seed).unwrap());
    }
    graphs.push(common::weighted_graph(200, 300, 5, 9));
    for topo in graphs {
        let apsp = compute_apsp(&topo).unwrap();
        let ecmp: EcmpTable<f64> = compute_ecmp_fractions(&topo, &apsp);
        for s in 0..topo.node_count() {
            for t in (0..topo.node_count()).filter(|&t| t != s) {
                check_flow(&topo, &ecmp, s, t);
                for &(e, _) in ecmp.fractions(s, t) {
                    let arc = topo.arc(e);
                    assert_eq!(apsp.dist(s, arc.src) + arc.weight + apsp.dist(arc.dst, t), apsp.dist(s, t));
                }
            }
        }
    }
}

#[test]
fn apsp_table_properties() {
    let topo = common::weighted_graph(30, 40, 4, 11);
    let apsp = compute_apsp(&topo).unwrap();
    let n = topo.node_count();
    for i in 0..n {
        assert_eq!((apsp.dist(i, i), apsp.sigma(i, i)), (0, 1));
        for j in 0..n {
            if i != j {
                assert!(apsp.sigma(i, j) >= 1 && apsp.hop(i, j) >= 1);
            }
            for k in 0..n {
                assert!(apsp.dist(i, j) <= apsp.dist(i, k) + apsp.dist(k, j));
            }
        }
    }
}

proptest! {
    #[test]
    fn sr_loads_are_leg_sums(n in 3usize..12, extra in 0usize..15, seed in any::<u64>()) {
        let topo = common::weighted_graph(n, extra, 3, seed);
        let apsp = compute_apsp(&topo).unwrap();
        let ecmp: EcmpTable<Exact> = compute_ecmp_fractions(&topo, &apsp);
        for i in 0..n {
            for j in (0..n).filter(|&j| j != i) {
                let direct = sr_path_loads(i, j, Candidate::Direct, &ecmp).unwrap();
                prop_assert_eq!(&direct.loads[..], ecmp.fractions(i, j));
                for k in 0..n {
                    let via = sr_path_loads(i, j, Candidate::Via(k), &ecmp).unwrap();
                    if k == i || k == j {
                        prop_assert_eq!(&via.loads, &direct.loads);
                        continue;
                    }
                    let mut sum: BTreeMap<usize, Exact> = BTreeMap::new();
                    for (e, f) in ecmp.fractions(i, k).iter().chain(ecmp.fractions(k, j)) {
                        *sum.entry(*e).or_default() += f.clone();
                    }
                    let expected: Vec<(usize, Exact)> = sum.into_iter().collect();
                    prop_assert_eq!(&via.loads, &expected);
                    let two = Exact::from_integer(2.into());
                    prop_assert!(via.loads.iter().all(|(_, l)| *l > Exact::default() && *l <= two));
                }
            }
        }
    }

    #[test]
    fn capacity_scaling(n in 3usize..10, seed in any::<u64>(), k in -12i32..12, c in 0.01f64..100.0) {
        let topo = synth::random_backbone(n, 1.7, seed).unwrap();
        let tm = generate_gravity_traffic(&topo, 1000.0, seed).unwrap();
        let apsp = compute_apsp(&topo).unwrap();
        let exact: EcmpTable<Exact> = compute_ecmp_fractions(&topo, &apsp);
        // powers of two scale f64 capacities without rounding
        let factor = 2f64.powi(k);
        let scaled = topo.with_scaled_capacities(factor).unwrap();
        let a = spr_mlu(&topo, &tm, &exact).mlu;
        let b = spr_mlu(&scaled, &tm, &exact).mlu;
        prop_assert_eq!(a / Exact::from_float(factor).unwrap(), b);

        let ecmp: EcmpTable<f64> = compute_ecmp_fractions(&topo, &apsp);
        let a = spr_mlu(&topo, &tm, &ecmp).mlu;
        prop_assert_eq!(a / factor, spr_mlu(&scaled, &tm, &ecmp).mlu);
        let b = spr_mlu(&topo.with_scaled_capacities(c).unwrap(), &tm, &ecmp).mlu;
        prop_assert!((a / c - b).abs() <= 4.0 * f64::EPSILON * b);
    }
}
