use std::fs::{self, File};
use std::io::ErrorKind;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use super::config::{SolveReport, SolverConfig};
use crate::error::{Error, Result};
use crate::milp::{listing_status, parse_solution, write_lp_file, write_start_file, MilpModel, SolveStatus};

/// Extra wall time granted beyond the configured limit before the solver
/// process is killed.
const KILL_GRACE: Duration = Duration::from_secs(30);
const POLL: Duration = Duration::from_millis(5);

/// Solves `model` with the external command of `config`.
///
/// The LP file, a shortest-path start solution and the listing live in a
/// private temporary directory. The returned assignment is checked against
/// the model: its utilization must agree with the reported objective up to
/// the gap.
pub fn solve_external(model: &MilpModel, config: &SolverConfig) -> Result<SolveReport> {
    config.validate()?;
    let dir = tempfile::Builder::new().prefix("srte-solve").tempdir()?;
    let model_path = dir.path().join("model.lp");
    let solution_path = dir.path().join("solution.txt");
    let start_path = dir.path().join("start.txt");
    let stderr_path = dir.path().join("stderr.txt");
    fs::write(&model_path, write_lp_file(model))?;
    fs::write(&start_path, write_start_file(model))?;

    let argv = config.command_line(
        &model_path.to_string_lossy(),
        &solution_path.to_string_lossy(),
        &start_path.to_string_lossy(),
    );
    let mut command = Command::new(&argv[0]);
    command
        .args(&argv[1..])
        .stdin(Stdio::null())
        .stdout(Stdio::null())
        .stderr(File::create(&stderr_path)?);

    let start = Instant::now();
    let mut child = command.spawn().map_err(|e| match e.kind() {
        ErrorKind::NotFound | ErrorKind::PermissionDenied => Error::CommandNotFound(argv[0].clone()),
        _ => Error::Io(e),
    })?;
    let deadline = Duration::from_secs_f64(config.time_limit.min(1e7)) + KILL_GRACE;
    let exit = loop {
        if let Some(status) = child.try_wait()? {
            break status;
        }
        if start.elapsed() > deadline {
            let _ = child.kill();
            let _ = child.wait();
            return Err(Error::SolverFailed {
                status: format!("killed after {:.1} s", start.elapsed().as_secs_f64()),
                stderr: read_tail(&stderr_path),
            });
        }
        std::thread::sleep(POLL);
    };
    let solve_time = start.elapsed().as_secs_f64();

    if !exit.success() {
        return Err(Error::SolverFailed {
            status: exit.to_string(),
            stderr: read_tail(&stderr_path),
        });
    }
    let text = fs::read_to_string(&solution_path).map_err(|_| Error::Listing {
        line: 0,
        message: "solver produced no listing".into(),
    })?;

    let mut solution = match parse_solution(&text, model) {
        Ok(solution) => solution,
        Err(Error::SolverStatus(_)) if listing_status(&text) == Some(SolveStatus::TimeLimit) => {
            return Ok(SolveReport {
                solution: None,
                solve_time,
                preprocess_time: 0.0,
                status: SolveStatus::TimeLimit,
            });
        }
        Err(e) => return Err(e),
    };

    let evaluated = model
        .utilization_of(&solution.assignment)
        .expect("parsed assignment uses model variables");
    let slack = config.gap * solution.reported_objective.abs() + 1e-6;
    if (evaluated - solution.reported_objective).abs() > slack {
        return Err(Error::SolverStatus(format!(
            "reported objective {} disagrees with assignment utilization {evaluated}",
            solution.reported_objective
        )));
    }
    solution.theta = evaluated;
    solution.wall_time = solve_time;
    Ok(SolveReport {
        status: solution.status,
        solution: Some(solution),
        solve_time,
        preprocess_time: 0.0,
    })
}

fn read_tail(path: &std::path::Path) -> String {
    let text = fs::read_to_string(path).unwrap_or_default();
    let lines: Vec<&str> = text.lines().collect();
    lines[lines.len().saturating_sub(20)..].join("\n")
}
