use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn srte(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_srte"))
        .args(args)
        .env_remove("SRTE_SOLVER_CMD")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn value<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key)?.strip_prefix(' '))
        .unwrap_or_else(|| panic!("no {key} in {text}"))
}

fn generate(dir: &Path) -> (String, String) {
    let t = dir.join("net.graph").display().to_string();
    let d = dir.join("net.demands").display().to_string();
    let out = srte(&[
        "gen", "--nodes", "10", "--links-per-node", "1.5", "--seed", "4", "--pairs", "12",
        "--topology-out", &t, "-o", &d,
    ]);
    assert!(out.status.success(), "{out:?}");
    (t, d)
}

#[test]
fn help_lists_subcommands() {
    let text = stdout(&srte(&["--help"]));
    for sub in ["solve", "preprocess", "centrality", "bench", "validate", "gen"] {
        assert!(text.contains(sub), "{sub}");
    }
}

#[test]
fn gen_validate_solve() {
    let dir = tempfile::tempdir().unwrap();
    let (t, d) = generate(dir.path());
    let out = srte(&["validate", "-t", &t, "-d", &d]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "ok");

    let out = srte(&["solve", "-t", &t, "-d", &d, "--backend", "exact", "--assignment"]);
    assert!(out.status.success(), "{out:?}");
    let text = stdout(&out);
    assert_eq!(value(&text, "status"), "optimal");
    let theta: f64 = value(&text, "theta").parse().unwrap();
    let spr: f64 = value(&text, "spr_mlu").parse().unwrap();
    assert!(theta <= spr + 1e-12);
    assert_eq!(text.lines().filter(|l| l.contains(',')).count(), 1 + 12);

    // domination keeps the optimum
    let filtered = stdout(&srte(&["solve", "-t", &t, "-d", &d, "--backend", "exact", "--stages", "dom"]));
    let theta_dom: f64 = value(&filtered, "theta").parse().unwrap();
    assert!((theta_dom - theta).abs() <= 1e-9 * theta);
}

#[test]
fn preprocess_reports_stages() {
    let dir = tempfile::tempdir().unwrap();
    let (t, d) = generate(dir.path());
    let dump = dir.path().join("cands.csv");
    let out = srte(&[
        "preprocess", "-t", &t, "-d", &d, "--filter", "dp0.05+sb1.4x+dom", "--dump", dump.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("stage ")).count(), 3);
    let remaining: usize = value(&text, "remaining_paths").parse().unwrap();
    let csv = fs::read_to_string(&dump).unwrap();
    assert_eq!(csv.lines().count(), 1 + remaining);
    assert!(!srte(&["preprocess", "-t", &t, "-d", &d]).status.success());
}

#[test]
fn centrality_of_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("line.graph");
    fs::write(
        &path,
        "NODES 3\nlabel x y\na 0 0\nb 1 0\nc 2 0\n\nEDGES 4\nlabel src dest weight bw delay\n\
         e0 0 1 1 10 1\ne1 1 0 1 10 1\ne2 1 2 1 10 1\ne3 2 1 1 10 1\n",
    )
    .unwrap();
    let text = stdout(&srte(&["centrality", "-t", path.to_str().unwrap(), "-k", "1"]));
    assert_eq!(value(&text, "group"), "1");
    assert!(value(&text, "centrality").starts_with("2 "));
}

#[test]
fn validate_flags_findings() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("oneway.graph");
    fs::write(
        &path,
        "NODES 2\nlabel x y\na 0 0\nb 1 0\n\nEDGES 1\nlabel src dest weight bw delay\ne0 0 1 1 10 1\n",
    )
    .unwrap();
    let out = srte(&["validate", "-t", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("not strongly connected"));
}

#[test]
fn bench_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("bench.conf");
    fs::write(
        &conf,
        "synthetic.nodes = 8\nsynthetic.seeds = 0..2\nsynthetic.demands = 10\nfilter = dom\nsolver.backend = exact\n",
    )
    .unwrap();
    let report = dir.path().join("report.csv");
    let out = srte(&["bench", conf.to_str().unwrap(), "-o", report.to_str().unwrap()]);
    assert!(out.status.success(), "{out:?}");
    let csv = fs::read_to_string(&report).unwrap();
    assert!(csv.starts_with("instance,config,theta_base,t_base,theta_filt,t_pre,t_filt,speedup,mlu_det,excluded_frac,status_base,status_filt\n"));
    assert_eq!(csv.lines().count(), 3);
}

#[test]
fn solver_command_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let (t, d) = generate(dir.path());
    let out = Command::new(env!("CARGO_BIN_EXE_srte"))
        .args(["solve", "-t", &t, "-d", &d])
        .env("SRTE_SOLVER_CMD", "srte-missing-solver {model} {solution}")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("command not found: srte-missing-solver"));
}

#[test]
fn bad_inputs_fail_cleanly() {
    let out = srte(&["solve", "-t", "/nonexistent.graph", "-d", "/nonexistent.demands"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: reading /nonexistent.graph"));
    let dir = tempfile::tempdir().unwrap();
    let (t, d) = generate(dir.path());
    assert_eq!(srte(&["solve", "-t", &t, "-d", &d, "--gap", "0.5"]).status.code(), Some(2));
    assert_eq!(srte(&["solve", "-t", &t, "-d", &d, "--filter", "sb0.3"]).status.code(), Some(2));
}
