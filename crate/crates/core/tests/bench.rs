mod common;

use std::fs;
use std::path::PathBuf;

use proptest::prelude::*;
use srte_core::bench::{
    emit_report, read_report, run_benchmark, run_benchmark_with, BenchmarkRecord, CapacityModel, ExperimentConfig,
    Mode, SyntheticSpec, SKIPPED_CONFIG,
};
use srte_core::candidates::FilterConfig;
use srte_core::fixtures;
use srte_core::net_model::{write_demands, write_topology, TrafficMatrix};
use srte_core::solve::SolverConfig;

fn synthetic(nodes: usize, seeds: std::ops::Range<u64>, demands: usize) -> SyntheticSpec {
    SyntheticSpec {
        nodes,
        seeds,
        links_per_node: 1.5,
        capacities: CapacityModel::Mixed,
        demands: Some(demands),
        ..SyntheticSpec::default()
    }
}

fn exact_config(spec: SyntheticSpec, filters: Vec<FilterConfig>) -> ExperimentConfig {
    ExperimentConfig {
        synthetic: Some(spec),
        filters,
        solver: SolverConfig::exact(),
        ..ExperimentConfig::default()
    }
}

#[test]
fn domination_cell_is_sound() {
    let config = exact_config(synthetic(9, 3..4, 14), vec![FilterConfig::domination_only()]);
    let records = run_benchmark(&config).unwrap();
    assert_eq!(records.len(), 1);
    let r = &records[0];
    assert_eq!((r.status_base.as_str(), r.status_filt.as_str()), ("optimal", "optimal"));
    assert!(r.mlu_det.unwrap().abs() <= config.solver.gap);
    assert!(r.speedup.unwrap() > 0.0);
    assert!(r.excluded_frac.unwrap() > 0.0);
}

fn diamond_files() -> (tempfile::TempDir, PathBuf, PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    let topo = fixtures::diamond(1.0);
    let tm = TrafficMatrix::from_triples(&[(0, 3, 1.0)]).unwrap();
    let (t, d) = (dir.path().join("diamond.graph"), dir.path().join("diamond.demands"));
    fs::write(&t, write_topology(&topo)).unwrap();
    fs::write(&d, write_demands(&tm)).unwrap();
    (dir, t, d)
}

#[test]
fn skips_spr_optimal_instances() {
    // ECMP already splits the single demand evenly over both branches
    let (_dir, t, d) = diamond_files();
    let config = ExperimentConfig {
        files: vec![(t, d)],
        filters: vec![FilterConfig::domination_only(), FilterConfig::stretch_only(1.0, false)],
        solver: SolverConfig::exact(),
        skip_spr_optimal: true,
        ..ExperimentConfig::default()
    };
    let records = run_benchmark(&config).unwrap();
    assert_eq!(records.len(), 1);
    assert_eq!(records[0].instance, "diamond");
    assert_eq!(records[0].config, SKIPPED_CONFIG);
    assert_eq!(records[0].theta_base, Some(0.5));

    let kept = run_benchmark(&ExperimentConfig { skip_spr_optimal: false, ..config }).unwrap();
    assert_eq!(kept.len(), 2);
}

#[test]
fn repetitions_use_medians() {
    let mut config = exact_config(synthetic(8, 0..2, 10), vec![FilterConfig::combined(0.05, 1.4)]);
    let once = run_benchmark(&config).unwrap();
    config.repetitions = 3;
    let mut events = 0;
    let thrice = run_benchmark_with(&config, |_| events += 1).unwrap();
    assert_eq!(events, 4, "one aggregated event per solve cell");
    for (a, b) in once.iter().zip(&thrice) {
        assert_eq!((a.theta_base, a.theta_filt), (b.theta_base, b.theta_filt));
        assert!(b.t_base.unwrap() >= 0.0 && b.t_filt.unwrap() >= 0.0);
    }
}

#[test]
fn failures_stay_in_their_rows() {
    let mut config = exact_config(synthetic(8, 0..2, 10), vec![FilterConfig::domination_only()]);
    config.solver = SolverConfig {
        command: "srte-no-such-solver {model} {solution}".into(),
        ..SolverConfig::default()
    };
    let records = run_benchmark(&config).unwrap();
    assert_eq!(records.len(), 2);
    for r in &records {
        assert!(r.status_base.starts_with("error: command not found"), "{}", r.status_base);
        assert!(r.status_filt.starts_with("error:"));
        assert_eq!((r.theta_base, r.speedup, r.mlu_det), (None, None, None));
    }
}

#[test]
fn stages_exclude_monotonically() {
    let config = exact_config(
        synthetic(10, 0..3, 15),
        vec![FilterConfig::combined(0.1, 1.4), FilterConfig {
            centrality_group_size: 4,
            stages: vec![
                srte_core::candidates::Stage::Centrality,
                srte_core::candidates::Stage::Stretch,
                srte_core::candidates::Stage::Domination,
            ],
            alpha_sb: 1.5,
            ..FilterConfig::default()
        }],
    );
    for r in run_benchmark(&config).unwrap() {
        assert_eq!(r.stages.len(), 3);
        let fractions: Vec<f64> = r.stages.iter().map(|s| s.excluded_fraction).collect();
        assert!(fractions.windows(2).all(|w| w[0] <= w[1]), "{fractions:?}");
        assert_eq!(fractions.last().copied(), r.excluded_frac);
    }
}

fn without_times(records: &[BenchmarkRecord]) -> Vec<BenchmarkRecord> {
    records
        .iter()
        .map(|r| BenchmarkRecord {
            t_base: None,
            t_pre: None,
            t_filt: None,
            speedup: None,
            ..r.clone()
        })
        .collect()
}

#[test]
fn reports_are_deterministic() {
    let config = exact_config(
        synthetic(9, 0..3, 12),
        vec![FilterConfig::domination_only(), FilterConfig::stretch_only(1.2, true)],
    );
    let dir = tempfile::tempdir().unwrap();
    let mut runs = Vec::new();
    for (i, mode) in [Mode::Accurate, Mode::Accurate, Mode::Throughput].into_iter().enumerate() {
        let records = run_benchmark(&ExperimentConfig { mode, ..config.clone() }).unwrap();
        let path = dir.path().join(format!("run{i}.csv"));
        emit_report(&records, &path).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 1 + 6);
        runs.push(without_times(&read_report(text.as_bytes()).unwrap()));
    }
    assert_eq!(runs[0], runs[1]);
    assert_eq!(runs[0], runs[2]);
}

#[test]
fn config_file_round() {
    let dir = tempfile::tempdir().unwrap();
    let (_d, t, d) = diamond_files();
    fs::copy(&t, dir.path().join("d.graph")).unwrap();
    fs::copy(&d, dir.path().join("d.demands")).unwrap();
    let path = dir.path().join("bench.conf");
    fs::write(&path, "instance = d.graph d.demands\nfilter = dom\nsolver.backend = exact\n").unwrap();
    let config = ExperimentConfig::from_file(&path).unwrap();
    let records = run_benchmark(&config).unwrap();
    assert_eq!(records[0].theta_filt, Some(0.5));
    assert_eq!(records[0].mlu_det, Some(0.0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn restriction_never_beats_baseline(n in 6usize..10, d in 4usize..12, seed in 0u64..500,
                                        alpha_sb in 1.0f64..2.0, alpha_dp in 0.0f64..0.3) {
        let config = exact_config(
            synthetic(n, seed..seed + 1, d),
            vec![FilterConfig::combined(alpha_dp, alpha_sb), FilterConfig::domination_only()],
        );
        let records = run_benchmark(&config).unwrap();
        let gap = config.solver.gap;
        prop_assert!(records[0].mlu_det.unwrap() >= -2.0 * gap);
        prop_assert!(records[1].mlu_det.unwrap().abs() <= 2.0 * gap);
    }
}
