use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use srte_core::bench::{emit_report, run_benchmark, ExperimentConfig, Mode};
use srte_core::candidates::{
    combined_pipeline, full_candidates, greedy_centrality_group, group_gsp_centrality, ExclusionStats, FilterConfig,
    Stage,
};
use srte_core::igp::{compute_apsp, spr_mlu};
use srte_core::net_model::{
    generate_gravity_traffic, generate_sparse_gravity_traffic, parse_demands, parse_topology, synth,
    validate_instance, write_demands, write_topology, Topology, TrafficMatrix,
};
use srte_core::solve::{solve, Backend, SolverConfig, SOLVER_CMD_ENV};
use srte_core::{Exact, Instance64, Scalar};

/// Segment-routing traffic engineering: 2SR optimization with path
/// preprocessing.
#[derive(Parser)]
#[command(name = "srte", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance and print MLU and middlepoint assignment.
    Solve {
        #[command(flatten)]
        input: InstanceArgs,
        #[command(flatten)]
        filter: FilterArgs,
        #[command(flatten)]
        solver: SolverArgs,
        /// Print the middlepoint chosen for every demand.
        #[arg(long)]
        assignment: bool,
    },
    /// Run the preprocessing pipeline and print exclusion statistics.
    Preprocess {
        #[command(flatten)]
        input: InstanceArgs,
        #[command(flatten)]
        filter: FilterArgs,
        /// Write the surviving candidates as CSV.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Greedy group of central nodes and its group shortest-path centrality.
    Centrality {
        #[arg(long, short)]
        topology: PathBuf,
        #[arg(long, short = 'k')]
        size: usize,
    },
    /// Run an experiment described by a key-value config file.
    Bench {
        config: PathBuf,
        #[arg(long, short, default_value = "report.csv")]
        output: PathBuf,
        /// Run filter cells concurrently; timings become indicative.
        #[arg(long)]
        throughput: bool,
    },
    /// Lint a topology and optional demands file.
    Validate {
        #[arg(long, short)]
        topology: PathBuf,
        #[arg(long, short)]
        demands: Option<PathBuf>,
    },
    /// Generate gravity traffic, optionally on a synthetic backbone.
    Gen(GenArgs),
}

#[derive(Args)]
struct InstanceArgs {
    /// Repetita topology file.
    #[arg(long, short)]
    topology: PathBuf,
    /// Repetita demands file.
    #[arg(long, short)]
    demands: PathBuf,
}

#[derive(Args)]
struct FilterArgs {
    /// Full pipeline label such as `dp0.05+sb1.4x+dom`; overrides the other
    /// filter flags.
    #[arg(long)]
    filter: Option<String>,
    /// Stretch bound; `inf` disables it.
    #[arg(long, default_value_t = f64::INFINITY)]
    alpha_sb: f64,
    /// Share of the total volume pinned to shortest paths.
    #[arg(long, default_value_t = 0.0)]
    alpha_dp: f64,
    /// Central group size; 0 keeps every middlepoint.
    #[arg(long, default_value_t = 0)]
    group_size: usize,
    /// Disable the one-hop extension of stretch bounding.
    #[arg(long)]
    no_one_hop: bool,
    /// Comma-separated stages from dp, gsp, sb, dom; `none` runs no stage.
    #[arg(long, default_value = "none")]
    stages: String,
}

impl FilterArgs {
    /// `None` when no stage is requested.
    fn config(&self) -> Result<Option<FilterConfig>> {
        if let Some(label) = &self.filter {
            return Ok(Some(label.parse()?));
        }
        if self.stages == "none" {
            return Ok(None);
        }
        let stages = self
            .stages
            .split(',')
            .map(str::parse::<Stage>)
            .collect::<srte_core::Result<Vec<_>>>()?;
        let config = FilterConfig {
            alpha_sb: self.alpha_sb,
            one_hop_extension: !self.no_one_hop,
            alpha_dp: self.alpha_dp,
            centrality_group_size: self.group_size,
            stages,
        };
        config.validate()?;
        Ok(Some(config))
    }
}

#[derive(Args)]
struct SolverArgs {
    #[arg(long, default_value = "external")]
    backend: Backend,
    /// External solver command with {model}, {solution} and optional {start} placeholders.
    #[arg(long, env = SOLVER_CMD_ENV)]
    solver_cmd: Option<String>,
    #[arg(long, default_value_t = 1e-4)]
    gap: f64,
    /// Seconds.
    #[arg(long, default_value_t = 3600.0)]
    time_limit: f64,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Node budget of the exact backend.
    #[arg(long, default_value_t = 100_000_000)]
    node_limit: u64,
}

impl SolverArgs {
    fn config(&self) -> Result<SolverConfig> {
        let mut config = SolverConfig {
            backend: self.backend,
            gap: self.gap,
            time_limit: self.time_limit,
            threads: self.threads,
            node_limit: self.node_limit,
            ..SolverConfig::default()
        };
        if let Some(cmd) = &self.solver_cmd {
            config.command = cmd.clone();
        }
        config.validate()?;
        Ok(config)
    }
}

#[derive(Args)]
struct GenArgs {
    /// Existing topology; otherwise a backbone with --nodes is generated.
    #[arg(long, short, conflicts_with = "nodes")]
    topology: Option<PathBuf>,
    #[arg(long, required_unless_present = "topology")]
    nodes: Option<usize>,
    #[arg(long, default_value_t = 2.0)]
    links_per_node: f64,
    #[arg(long, default_value = "heterogeneous")]
    capacities: synth::Capacities,
    /// Where to write the generated topology.
    #[arg(long, requires = "nodes")]
    topology_out: Option<PathBuf>,
    #[arg(long, default_value_t = 1000.0)]
    total: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of demand pairs; all ordered pairs when absent.
    #[arg(long)]
    pairs: Option<usize>,
    /// Demands file; stdout when absent.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_topology(path: &Path) -> Result<Topology> {
    parse_topology(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_instance(args: &InstanceArgs) -> Result<Instance64> {
    let topo = load_topology(&args.topology)?;
    let tm = parse_demands(&read(&args.demands)?, &topo)
        .with_context(|| format!("parsing {}", args.demands.display()))?;
    let name = args.topology.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    Ok(Instance64::new(name, topo, tm)?)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Solve {
            input,
            filter,
            solver,
            assignment,
        } => {
            let inst = load_instance(&input)?;
            let solver = solver.config()?;
            let start = Instant::now();
            let (cands, stats) = match filter.config()? {
                Some(f) => combined_pipeline(&inst.topology, &inst.traffic, &inst.apsp, &inst.ecmp, &f)?,
                None => {
                    let full = full_candidates(&inst.topology, &inst.traffic);
                    let stats = ExclusionStats::new(full.path_count(), full.path_count());
                    (full, stats)
                }
            };
            let preprocess = start.elapsed().as_secs_f64();
            let report = solve(&inst.topology, &inst.traffic, &cands, &inst.ecmp, &solver)?;
            println!("status {}", report.status);
            match report.theta() {
                Some(theta) => println!("theta {theta}"),
                None => println!("theta none"),
            }
            println!("spr_mlu {}", spr_mlu(&inst.topology, &inst.traffic, &inst.ecmp).mlu);
            println!("excluded_fraction {}", stats.excluded_fraction);
            println!("preprocess_time {preprocess:.6}");
            println!("solve_time {:.6}", report.solve_time);
            if let (true, Some(solution)) = (assignment, &report.solution) {
                println!("demand,src,dst,middlepoint");
                for (d, c) in inst.traffic.demands().iter().zip(&solution.assignment) {
                    println!("{},{},{},{c}", d.id, d.src, d.dst);
                }
            }
        }
        Command::Preprocess { input, filter, dump } => {
            let inst = load_instance(&input)?;
            let Some(config) = filter.config()? else {
                bail!("no pipeline stage selected; use --stages or --filter");
            };
            let start = Instant::now();
            let (cands, stats) = combined_pipeline(&inst.topology, &inst.traffic, &inst.apsp, &inst.ecmp, &config)?;
            println!("config {}", config.label());
            println!("total_paths {}", stats.total_paths);
            for stage in &stats.stages {
                println!("stage {} remaining {} excluded {:.6}", stage.stage, stage.remaining_paths, stage.excluded_fraction);
            }
            println!("remaining_paths {}", stats.remaining_paths);
            println!("pinned_demands {}", cands.pinned_count());
            println!("excluded_fraction {}", stats.excluded_fraction);
            println!("preprocess_time {:.6}", start.elapsed().as_secs_f64());
            if let Some(path) = dump {
                fs::write(&path, cands.to_csv()).with_context(|| format!("writing {}", path.display()))?;
            }
        }
        Command::Centrality { topology, size } => {
            let topo = load_topology(&topology)?;
            let apsp = compute_apsp(&topo)?;
            let group = greedy_centrality_group::<Exact>(&topo, &apsp, size)?;
            let value: Exact = group_gsp_centrality(&topo, &apsp, &group);
            let names: Vec<String> = group.iter().map(ToString::to_string).collect();
            println!("group {}", names.join(","));
            println!("centrality {} ({})", value, value.to_real());
        }
        Command::Bench {
            config,
            output,
            throughput,
        } => {
            let mut experiment = ExperimentConfig::from_file(&config)?;
            if throughput {
                experiment.mode = Mode::Throughput;
            }
            if experiment.mode == Mode::Throughput {
                eprintln!("throughput mode: timing columns are indicative only");
            }
            let records = run_benchmark(&experiment)?;
            emit_report(&records, &output)?;
            let failed = records.iter().filter(|r| r.status_filt.starts_with("error")).count();
            println!("{} rows written to {} ({failed} failed cells)", records.len(), output.display());
        }
        Command::Validate { topology, demands } => {
            // parse failures count as findings
            let topo = match parse_topology(&read(&topology)?) {
                Ok(topo) => topo,
                Err(e) => {
                    println!("{e}");
                    return Ok(ExitCode::from(1));
                }
            };
            let tm = match &demands {
                Some(path) => match parse_demands(&read(path)?, &topo) {
                    Ok(tm) => tm,
                    Err(e) => {
                        println!("{e}");
                        return Ok(ExitCode::from(1));
                    }
                },
                None => TrafficMatrix::new(Vec::new())?,
            };
            let report = validate_instance(&topo, &tm);
            print!("{report}");
            if !report.is_empty() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Gen(args) => {
            let topo = match (&args.topology, args.nodes) {
                (Some(path), _) => load_topology(path)?,
                (None, Some(n)) => synth::random_backbone_with(n, args.links_per_node, args.capacities, args.seed)?,
                (None, None) => bail!("either --topology or --nodes is required"),
            };
            if let Some(path) = &args.topology_out {
                fs::write(path, write_topology(&topo)).with_context(|| format!("writing {}", path.display()))?;
            }
            let tm = match args.pairs {
                Some(pairs) => generate_sparse_gravity_traffic(&topo, args.total, pairs, args.seed)?,
                None => generate_gravity_traffic(&topo, args.total, args.seed)?,
            };
            let text = write_demands(&tm);
            match &args.output {
                Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
