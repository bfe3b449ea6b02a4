use std::fmt;
use std::fs;
use std::ops::Range;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::candidates::FilterConfig;
use crate::error::{parse_err, Error, Result};
use crate::net_model::{
    generate_gravity_traffic, generate_sparse_gravity_traffic, parse_demands, parse_topology, synth,
};
use crate::solve::SolverConfig;
use crate::Instance64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CapacityModel {
    Unit,
    Heterogeneous,
    /// Unit capacities for even seeds, palette capacities for odd ones.
    Mixed,
}

impl CapacityModel {
    pub fn for_seed(self, seed: u64) -> synth::Capacities {
        match self {
            CapacityModel::Unit => synth::Capacities::Unit,
            CapacityModel::Heterogeneous => synth::Capacities::Heterogeneous,
            CapacityModel::Mixed if seed % 2 == 0 => synth::Capacities::Unit,
            CapacityModel::Mixed => synth::Capacities::Heterogeneous,
        }
    }
}

impl FromStr for CapacityModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unit" => Ok(CapacityModel::Unit),
            "heterogeneous" => Ok(CapacityModel::Heterogeneous),
            "mixed" => Ok(CapacityModel::Mixed),
            other => Err(Error::Config(format!("unknown capacity model {other:?}"))),
        }
    }
}

impl fmt::Display for CapacityModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CapacityModel::Unit => "unit",
            CapacityModel::Heterogeneous => "heterogeneous",
            CapacityModel::Mixed => "mixed",
        })
    }
}

/// Random backbones with gravity traffic, one instance per seed.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticSpec {
    pub nodes: usize,
    pub seeds: Range<u64>,
    pub total_volume: f64,
    pub links_per_node: f64,
    pub capacities: CapacityModel,
    /// Number of demands; `None` means every ordered pair.
    pub demands: Option<usize>,
}

impl Default for SyntheticSpec {
    fn default() -> Self {
        Self {
            nodes: 20,
            seeds: 0..5,
            total_volume: 1000.0,
            links_per_node: 2.0,
            capacities: CapacityModel::Mixed,
            demands: None,
        }
    }
}

impl SyntheticSpec {
    pub fn instance(&self, seed: u64) -> Result<Instance64> {
        let topo = synth::random_backbone_with(
            self.nodes,
            self.links_per_node,
            self.capacities.for_seed(seed),
            seed,
        )?;
        let tm = match self.demands {
            None => generate_gravity_traffic(&topo, self.total_volume, seed)?,
            Some(d) => generate_sparse_gravity_traffic(&topo, self.total_volume, d, seed)?,
        };
        Instance64::new(format!("synth-n{}-s{seed}", self.nodes), topo, tm)
    }
}

/// Timing-accurate runs solves one at a time; throughput runs the cells of
/// an instance concurrently, so its timing columns are only indicative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Accurate,
    Throughput,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "accurate" => Ok(Mode::Accurate),
            "throughput" => Ok(Mode::Throughput),
            other => Err(Error::Config(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    /// (topology file, demands file) pairs in Repetita format.
    pub files: Vec<(PathBuf, PathBuf)>,
    pub synthetic: Option<SyntheticSpec>,
    pub filters: Vec<FilterConfig>,
    pub solver: SolverConfig,
    pub repetitions: usize,
    pub skip_spr_optimal: bool,
    pub mode: Mode,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            files: Vec::new(),
            synthetic: None,
            filters: Vec::new(),
            solver: SolverConfig::default(),
            repetitions: 1,
            skip_spr_optimal: false,
            mode: Mode::Accurate,
        }
    }
}

impl ExperimentConfig {
    pub fn instance_count(&self) -> usize {
        let synthetic = self.synthetic.as_ref().map_or(0, |s| s.seeds.clone().count());
        self.files.len() + synthetic
    }

    pub fn validate(&self) -> Result<()> {
        if self.instance_count() == 0 {
            return Err(Error::Config("experiment has no instances".into()));
        }
        if self.filters.is_empty() {
            return Err(Error::Config("experiment has no filter configurations".into()));
        }
        if self.repetitions == 0 {
            return Err(Error::Config("repetitions must be at least 1".into()));
        }
        for f in &self.filters {
            f.validate()?;
        }
        self.solver.validate()
    }

    /// Loads the instances in order: files first, then synthetic seeds.
    pub fn load_instances(&self) -> impl Iterator<Item = Result<Instance64>> + '_ {
        let files = self.files.iter().map(|(t, d)| load_files(t, d));
        let synthetic = self
            .synthetic
            .iter()
            .flat_map(|spec| spec.seeds.clone().map(move |seed| spec.instance(seed)));
        files.chain(synthetic)
    }

    /// Reads a key-value file; relative instance paths resolve against the
    /// file's directory.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        Self::parse(&text, path.parent())
    }

    /// Parses `key = value` lines. `#` starts a comment; `instance` and
    /// `filter` may repeat.
    ///
    /// ```text
    /// instance = abilene.graph abilene.demands
    /// synthetic.nodes = 50
    /// synthetic.seeds = 0..10
    /// filter = dp0.05+sb1.4x+dom
    /// solver.gap = 1e-3
    /// repetitions = 3
    /// ```
    pub fn parse(text: &str, base: Option<&Path>) -> Result<Self> {
        let mut config = ExperimentConfig::default();
        for (index, raw) in text.lines().enumerate() {
            let line_no = index + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| parse_err(line_no, format!("expected key = value, got {line:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            config
                .set(key, value, base)
                .map_err(|e| parse_err(line_no, format!("{key}: {e}")))?;
        }
        config.validate()?;
        Ok(config)
    }

    fn set(&mut self, key: &str, value: &str, base: Option<&Path>) -> Result<()> {
        fn num<T: FromStr>(value: &str) -> Result<T> {
            value
                .parse()
                .map_err(|_| Error::Config(format!("cannot parse {value:?}")))
        }
        let resolve = |p: &str| match base {
            Some(dir) if Path::new(p).is_relative() => dir.join(p),
            _ => PathBuf::from(p),
        };
        let spec = || SyntheticSpec::default();
        match key {
            "instance" => {
                let parts: Vec<&str> = value.split_whitespace().collect();
                let [topology, demands] = parts[..] else {
                    return Err(Error::Config("expected a topology and a demands path".into()));
                };
                self.files.push((resolve(topology), resolve(demands)));
            }
            "filter" => self.filters.push(value.parse()?),
            "repetitions" => self.repetitions = num(value)?,
            "skip_spr_optimal" => self.skip_spr_optimal = num(value)?,
            "mode" => self.mode = value.parse()?,
            "solver.backend" => self.solver.backend = value.parse()?,
            "solver.command" => self.solver.command = value.to_string(),
            "solver.gap" => self.solver.gap = num(value)?,
            "solver.time_limit" => self.solver.time_limit = num(value)?,
            "solver.threads" => self.solver.threads = num(value)?,
            "solver.node_limit" => self.solver.node_limit = num(value)?,
            _ if key.starts_with("synthetic.") => {
                let s = self.synthetic.get_or_insert_with(spec);
                match &key["synthetic.".len()..] {
                    "nodes" => s.nodes = num(value)?,
                    "seeds" => s.seeds = parse_range(value)?,
                    "total" => s.total_volume = num(value)?,
                    "links_per_node" => s.links_per_node = num(value)?,
                    "capacities" => s.capacities = value.parse()?,
                    "demands" => s.demands = Some(num(value)?),
                    other => return Err(Error::Config(format!("unknown key synthetic.{other}"))),
                }
            }
            other => return Err(Error::Config(format!("unknown key {other}"))),
        }
        Ok(())
    }
}

/// `a..b` (exclusive) or a single seed.
fn parse_range(value: &str) -> Result<Range<u64>> {
    let bad = || Error::Config(format!("bad seed range {value:?}"));
    match value.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
            if a >= b {
                return Err(bad());
            }
            Ok(a..b)
        }
        None => {
            let a: u64 = value.parse().map_err(|_| bad())?;
            Ok(a..a + 1)
        }
    }
}

fn load_files(topology: &Path, demands: &Path) -> Result<Instance64> {
    let topo = parse_topology(&fs::read_to_string(topology)?)?;
    let tm = parse_demands(&fs::read_to_string(demands)?, &topo)?;
    let name = topology
        .file_stem()
        .map_or_else(|| topology.display().to_string(), |s| s.to_string_lossy().into_owned());
    Instance64::new(name, topo, tm)
}
