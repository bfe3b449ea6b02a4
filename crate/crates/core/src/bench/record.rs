use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::candidates::{ExclusionStats, StageStats};
use crate::error::{Error, Result};
use crate::solve::SolveReport;

pub const REPORT_HEADER: &str =
    "instance,config,theta_base,t_base,theta_filt,t_pre,t_filt,speedup,mlu_det,excluded_frac,status_base,status_filt";

/// One (instance, filter configuration) cell. Missing numbers mean the
/// corresponding solve failed or the metric is undefined.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkRecord {
    pub instance: String,
    pub config: String,
    pub theta_base: Option<f64>,
    pub t_base: Option<f64>,
    pub theta_filt: Option<f64>,
    pub t_pre: Option<f64>,
    pub t_filt: Option<f64>,
    /// `t_base / (t_pre + t_filt)`.
    pub speedup: Option<f64>,
    /// `(theta_filt - theta_base) / theta_base`.
    pub mlu_det: Option<f64>,
    pub excluded_frac: Option<f64>,
    pub status_base: String,
    pub status_filt: String,
    /// Exclusion after each pipeline stage; not part of the CSV.
    #[serde(skip)]
    pub stages: Vec<StageStats>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Metrics {
    pub speedup: Option<f64>,
    /// `None` when the baseline MLU is zero.
    pub mlu_deterioration: Option<f64>,
    pub excluded_fraction: f64,
}

/// Speedup (preprocessing time counted against the filtered run), relative
/// MLU deterioration and exclusion share.
pub fn compute_metrics(baseline: &SolveReport, filtered: &SolveReport, stats: &ExclusionStats) -> Result<Metrics> {
    let (Some(base), Some(filt)) = (baseline.theta(), filtered.theta()) else {
        return Err(Error::Config("metrics need a solution on both sides".into()));
    };
    let denominator = filtered.preprocess_time + filtered.solve_time;
    Ok(Metrics {
        speedup: (denominator > 0.0).then(|| baseline.solve_time / denominator),
        mlu_deterioration: (base > 0.0).then(|| (filt - base) / base),
        excluded_fraction: stats.excluded_fraction,
    })
}

pub fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    Some(if values.len() % 2 == 1 {
        values[mid]
    } else {
        (values[mid - 1] + values[mid]) / 2.0
    })
}

/// Writes the CSV report sorted by instance, then configuration.
pub fn write_report<W: Write>(records: &[BenchmarkRecord], out: W) -> Result<()> {
    let mut sorted: Vec<&BenchmarkRecord> = records.iter().collect();
    sorted.sort_by(|a, b| (&a.instance, &a.config).cmp(&(&b.instance, &b.config)));
    let mut writer = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    writer.write_record(REPORT_HEADER.split(','))?;
    for record in sorted {
        writer.serialize(record)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn emit_report(records: &[BenchmarkRecord], path: &Path) -> Result<()> {
    write_report(records, File::create(path)?)
}

pub fn read_report<R: Read>(input: R) -> Result<Vec<BenchmarkRecord>> {
    let mut reader = csv::Reader::from_reader(input);
    let header: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    if header.join(",") != REPORT_HEADER {
        return Err(Error::Config(format!("unexpected report header {:?}", header.join(","))));
    }
    reader
        .deserialize()
        .map(|row| row.map_err(Error::from))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::milp::{SolveStatus, SrSolution};

    fn report(theta: f64, solve_time: f64, preprocess_time: f64) -> SolveReport {
        SolveReport {
            solution: Some(SrSolution {
                assignment: Vec::new(),
                theta,
                status: SolveStatus::Optimal,
                reported_objective: theta,
                reported_gap: None,
                wall_time: solve_time,
            }),
            solve_time,
            preprocess_time,
            status: SolveStatus::Optimal,
        }
    }

    #[test]
    fn metric_arithmetic() {
        let stats = ExclusionStats::new(100, 10);
        let m = compute_metrics(&report(0.5, 100.0, 0.0), &report(0.55, 8.0, 2.0), &stats).unwrap();
        assert_eq!(m.speedup, Some(10.0));
        assert!((m.mlu_deterioration.unwrap() - 0.1).abs() < 1e-15);
        assert_eq!(m.excluded_fraction, 0.9);
        let same = compute_metrics(&report(0.5, 1.0, 0.0), &report(0.5, 1.0, 0.0), &stats).unwrap();
        assert_eq!(same.mlu_deterioration, Some(0.0));
        let trivial = compute_metrics(&report(0.0, 1.0, 0.0), &report(0.0, 1.0, 0.0), &stats).unwrap();
        assert_eq!(trivial.mlu_deterioration, None);
        let mut failed = report(0.5, 1.0, 0.0);
        failed.solution = None;
        assert!(compute_metrics(&failed, &report(0.5, 1.0, 0.0), &stats).is_err());
    }

    #[test]
    fn medians() {
        assert_eq!(median(&mut []), None);
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), Some(2.5));
    }

    fn sample(instance: &str, config: &str) -> BenchmarkRecord {
        BenchmarkRecord {
            instance: instance.into(),
            config: config.into(),
            theta_base: Some(0.1 + 0.2),
            t_base: Some(1.0 / 3.0),
            theta_filt: Some(std::f64::consts::PI),
            t_pre: Some(1e-7),
            t_filt: None,
            speedup: None,
            mlu_det: Some(-0.0),
            excluded_frac: Some(0.987654321012345),
            status_base: "optimal".into(),
            status_filt: "error: solver exited, status 1".into(),
            stages: Vec::new(),
        }
    }

    #[test]
    fn header_only() {
        let mut out = Vec::new();
        write_report(&[], &mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), format!("{REPORT_HEADER}\n"));
    }

    #[test]
    fn round_trip_and_order() {
        let records = vec![sample("b", "dom"), sample("a", "sb1.4x"), sample("a", "dom")];
        let mut out = Vec::new();
        write_report(&records, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().count(), 4);
        let back = read_report(text.as_bytes()).unwrap();
        let keys: Vec<(&str, &str)> = back.iter().map(|r| (r.instance.as_str(), r.config.as_str())).collect();
        assert_eq!(keys, [("a", "dom"), ("a", "sb1.4x"), ("b", "dom")]);
        assert_eq!(back[2], records[0]);
        assert_eq!(back[0].t_base.unwrap().to_bits(), (1.0f64 / 3.0).to_bits());
    }

    #[test]
    fn unwritable_path() {
        assert!(emit_report(&[], Path::new("/nonexistent-dir/report.csv")).is_err());
    }
}
