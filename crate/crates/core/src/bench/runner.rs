use std::time::Instant;

use super::config::{ExperimentConfig, Mode};
use super::record::{compute_metrics, median, BenchmarkRecord};
use crate::candidates::{combined_pipeline, full_candidates, CandidateSet, ExclusionStats, FilterConfig};
use crate::error::Result;
use crate::igp::spr_mlu;
use crate::solve::{solve, SolveReport, SolverConfig};
use crate::Instance64;

/// Config column of the row noting an instance skipped because shortest-path
/// routing is already optimal.
pub const SKIPPED_CONFIG: &str = "skipped";

/// Passed to the observer after every aggregated solve.
pub struct SolveEvent<'a> {
    pub instance: &'a Instance64,
    /// `None` for the baseline over full candidate sets.
    pub filter: Option<&'a FilterConfig>,
    pub candidates: &'a CandidateSet,
    pub report: &'a SolveReport,
}

pub fn run_benchmark(config: &ExperimentConfig) -> Result<Vec<BenchmarkRecord>> {
    run_benchmark_with(config, |_| {})
}

/// Runs the experiment matrix. Solver failures land in the affected rows;
/// only configuration and instance loading errors abort the run.
pub fn run_benchmark_with(
    config: &ExperimentConfig,
    mut observe: impl FnMut(&SolveEvent),
) -> Result<Vec<BenchmarkRecord>> {
    config.validate()?;
    let mut records = Vec::new();
    for instance in config.load_instances() {
        let instance = instance?;
        let full = full_candidates(&instance.topology, &instance.traffic);
        let baseline = repeat(config.repetitions, || {
            solve(&instance.topology, &instance.traffic, &full, &instance.ecmp, &config.solver)
        });
        if let Ok(report) = &baseline {
            observe(&SolveEvent {
                instance: &instance,
                filter: None,
                candidates: &full,
                report,
            });
        }
        if config.skip_spr_optimal && spr_is_optimal(&instance, &baseline, config.solver.gap) {
            records.push(skipped_row(&instance.name, &baseline));
            continue;
        }

        let cells: Vec<Cell> = match config.mode {
            Mode::Accurate => config
                .filters
                .iter()
                .map(|f| run_cell(&instance, f, &config.solver, config.repetitions))
                .collect(),
            Mode::Throughput => std::thread::scope(|scope| {
                let handles: Vec<_> = config
                    .filters
                    .iter()
                    .map(|f| scope.spawn(|| run_cell(&instance, f, &config.solver, config.repetitions)))
                    .collect();
                handles.into_iter().map(|h| h.join().expect("benchmark cell panicked")).collect()
            }),
        };
        for (filter, cell) in config.filters.iter().zip(&cells) {
            if let (Some((cands, _)), Ok(report)) = (&cell.pipeline, &cell.report) {
                observe(&SolveEvent {
                    instance: &instance,
                    filter: Some(filter),
                    candidates: cands,
                    report,
                });
            }
            records.push(row(&instance.name, filter, &baseline, cell));
        }
    }
    Ok(records)
}

type Outcome = std::result::Result<SolveReport, String>;

struct Cell {
    pipeline: Option<(CandidateSet, ExclusionStats)>,
    report: Outcome,
}

/// Runs `solve_once` `reps` times; times become medians, the solution is the
/// first one (the model is deterministic).
fn repeat(reps: usize, mut solve_once: impl FnMut() -> Result<SolveReport>) -> Outcome {
    let mut first: Option<SolveReport> = None;
    let (mut solve_times, mut pre_times) = (Vec::new(), Vec::new());
    for _ in 0..reps {
        let report = solve_once().map_err(|e| e.to_string())?;
        solve_times.push(report.solve_time);
        pre_times.push(report.preprocess_time);
        first.get_or_insert(report);
    }
    let mut report = first.expect("at least one repetition");
    report.solve_time = median(&mut solve_times).unwrap_or(0.0);
    report.preprocess_time = median(&mut pre_times).unwrap_or(0.0);
    Ok(report)
}

fn run_cell(instance: &Instance64, filter: &FilterConfig, solver: &SolverConfig, reps: usize) -> Cell {
    let mut pipeline = None;
    let report = repeat(reps, || {
        let start = Instant::now();
        let (cands, stats) = combined_pipeline(
            &instance.topology,
            &instance.traffic,
            &instance.apsp,
            &instance.ecmp,
            filter,
        )?;
        let preprocess_time = start.elapsed().as_secs_f64();
        let mut report = solve(&instance.topology, &instance.traffic, &cands, &instance.ecmp, solver)?;
        report.preprocess_time = preprocess_time;
        pipeline = Some((cands, stats));
        Ok(report)
    });
    Cell { pipeline, report }
}

fn spr_is_optimal(instance: &Instance64, baseline: &Outcome, gap: f64) -> bool {
    let Some(theta) = baseline.as_ref().ok().and_then(SolveReport::theta) else {
        return false;
    };
    let spr = spr_mlu(&instance.topology, &instance.traffic, &instance.ecmp).mlu;
    spr - theta <= gap * spr + 1e-9
}

fn status(outcome: &Outcome) -> String {
    match outcome {
        Ok(report) => report.status.to_string(),
        Err(message) => format!("error: {message}"),
    }
}

fn skipped_row(instance: &str, baseline: &Outcome) -> BenchmarkRecord {
    let base = baseline.as_ref().ok();
    BenchmarkRecord {
        instance: instance.to_string(),
        config: SKIPPED_CONFIG.to_string(),
        theta_base: base.and_then(SolveReport::theta),
        t_base: base.map(|r| r.solve_time),
        theta_filt: None,
        t_pre: None,
        t_filt: None,
        speedup: None,
        mlu_det: None,
        excluded_frac: None,
        status_base: status(baseline),
        status_filt: "skipped: SPR optimal".into(),
        stages: Vec::new(),
    }
}

fn row(instance: &str, filter: &FilterConfig, baseline: &Outcome, cell: &Cell) -> BenchmarkRecord {
    let base = baseline.as_ref().ok();
    let filt = cell.report.as_ref().ok();
    let stats = cell.pipeline.as_ref().map(|(_, s)| s);
    let metrics = match (base, filt, stats) {
        (Some(b), Some(f), Some(s)) => compute_metrics(b, f, s).ok(),
        _ => None,
    };
    let mut status_base = status(baseline);
    if base.and_then(SolveReport::theta) == Some(0.0) {
        status_base = "SPR-trivial".into();
    }
    BenchmarkRecord {
        instance: instance.to_string(),
        config: filter.label(),
        theta_base: base.and_then(SolveReport::theta),
        t_base: base.map(|r| r.solve_time),
        theta_filt: filt.and_then(SolveReport::theta),
        t_pre: filt.map(|r| r.preprocess_time),
        t_filt: filt.map(|r| r.solve_time),
        speedup: metrics.as_ref().and_then(|m| m.speedup),
        mlu_det: metrics.as_ref().and_then(|m| m.mlu_deterioration),
        excluded_frac: stats.map(|s| s.excluded_fraction),
        status_base,
        status_filt: status(&cell.report),
        stages: stats.map(|s| s.stages.clone()).unwrap_or_default(),
    }
}
