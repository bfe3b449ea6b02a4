use std::fmt;
use std::str::FromStr;

use super::{
    centrality_filter, demand_pinning_filter, domination_filter, full_candidates,
    greedy_centrality_group, stretch_bounding_filter, CandidateSet, ExclusionStats,
};
use crate::error::{Error, Result};
use crate::igp::{ApspTable, EcmpTable};
use crate::net_model::{Topology, TrafficMatrix};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    Pinning,
    Centrality,
    Stretch,
    Domination,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::Pinning => "dp",
            Stage::Centrality => "gsp",
            Stage::Stretch => "sb",
            Stage::Domination => "dom",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Stage {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "dp" | "pin" | "pinning" => Ok(Stage::Pinning),
            "gsp" | "centrality" => Ok(Stage::Centrality),
            "sb" | "stretch" => Ok(Stage::Stretch),
            "dom" | "domination" => Ok(Stage::Domination),
            other => Err(Error::Config(format!("unknown stage {other:?}"))),
        }
    }
}

/// Parameters of the preprocessing pipeline. Stages run in `stages` order;
/// a stage whose parameter makes it a no-op still runs (and is reported).
#[derive(Debug, Clone, PartialEq)]
pub struct FilterConfig {
    /// Stretch factor, `>= 1` or infinite.
    pub alpha_sb: f64,
    pub one_hop_extension: bool,
    /// Pinned traffic share in `[0, 1]`.
    pub alpha_dp: f64,
    /// Central group size; 0 leaves candidates unchanged.
    pub centrality_group_size: usize,
    pub stages: Vec<Stage>,
}

impl Default for FilterConfig {
    /// The combined pipeline with every parameter at its no-op value.
    fn default() -> Self {
        Self {
            alpha_sb: f64::INFINITY,
            one_hop_extension: true,
            alpha_dp: 0.0,
            centrality_group_size: 0,
            stages: Self::COMBINED.to_vec(),
        }
    }
}

impl FilterConfig {
    /// Pinning first, then stretch bounding, domination last.
    pub const COMBINED: [Stage; 3] = [Stage::Pinning, Stage::Stretch, Stage::Domination];

    pub fn combined(alpha_dp: f64, alpha_sb: f64) -> Self {
        Self {
            alpha_dp,
            alpha_sb,
            ..Self::default()
        }
    }

    pub fn stretch_only(alpha_sb: f64, one_hop_extension: bool) -> Self {
        Self {
            alpha_sb,
            one_hop_extension,
            stages: vec![Stage::Stretch],
            ..Self::default()
        }
    }

    pub fn pinning_only(alpha_dp: f64) -> Self {
        Self {
            alpha_dp,
            stages: vec![Stage::Pinning],
            ..Self::default()
        }
    }

    pub fn centrality_only(group_size: usize) -> Self {
        Self {
            centrality_group_size: group_size,
            stages: vec![Stage::Centrality],
            ..Self::default()
        }
    }

    pub fn domination_only() -> Self {
        Self {
            stages: vec![Stage::Domination],
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.alpha_sb.is_nan() || self.alpha_sb < 1.0 {
            return Err(Error::Config(format!("alpha_sb must be >= 1, got {}", self.alpha_sb)));
        }
        if !(0.0..=1.0).contains(&self.alpha_dp) {
            return Err(Error::Config(format!(
                "alpha_dp must be in [0, 1], got {}",
                self.alpha_dp
            )));
        }
        if self.stages.is_empty() {
            return Err(Error::Config("no pipeline stages".into()));
        }
        Ok(())
    }

    /// Short identifier such as `dp0.01+sb1.4x+dom`.
    pub fn label(&self) -> String {
        self.stages
            .iter()
            .map(|stage| match stage {
                Stage::Pinning => format!("dp{}", self.alpha_dp),
                Stage::Centrality => format!("gsp{}", self.centrality_group_size),
                Stage::Stretch => format!(
                    "sb{}{}",
                    if self.alpha_sb.is_infinite() { "inf".to_string() } else { self.alpha_sb.to_string() },
                    if self.one_hop_extension { "x" } else { "" }
                ),
                Stage::Domination => "dom".to_string(),
            })
            .collect::<Vec<_>>()
            .join("+")
    }
}

impl FromStr for FilterConfig {
    type Err = Error;

    /// Inverse of [`FilterConfig::label`].
    fn from_str(s: &str) -> Result<Self> {
        let bad = |part: &str| Error::Config(format!("bad filter component {part:?} in {s:?}"));
        let number = |text: &str, part: &str| text.parse::<f64>().map_err(|_| bad(part));
        let mut config = FilterConfig {
            stages: Vec::new(),
            ..FilterConfig::default()
        };
        for part in s.trim().split('+').map(str::trim) {
            if part == "dom" {
                config.stages.push(Stage::Domination);
            } else if let Some(rest) = part.strip_prefix("dp") {
                config.alpha_dp = number(rest, part)?;
                config.stages.push(Stage::Pinning);
            } else if let Some(rest) = part.strip_prefix("gsp") {
                config.centrality_group_size = rest.parse().map_err(|_| bad(part))?;
                config.stages.push(Stage::Centrality);
            } else if let Some(rest) = part.strip_prefix("sb") {
                let (value, extension) = match rest.strip_suffix('x') {
                    Some(v) => (v, true),
                    None => (rest, false),
                };
                config.alpha_sb = if value == "inf" { f64::INFINITY } else { number(value, part)? };
                config.one_hop_extension = extension;
                config.stages.push(Stage::Stretch);
            } else {
                return Err(bad(part));
            }
        }
        config.validate()?;
        Ok(config)
    }
}

/// Runs the configured stages on the full candidate sets and reports the
/// remaining path count after each one.
pub fn combined_pipeline<S: Scalar>(
    topo: &Topology,
    tm: &TrafficMatrix,
    apsp: &ApspTable,
    ecmp: &EcmpTable<S>,
    config: &FilterConfig,
) -> Result<(CandidateSet, ExclusionStats)> {
    config.validate()?;
    let mut cands = full_candidates(topo, tm);
    let mut stats = ExclusionStats::new(cands.path_count(), cands.path_count());
    for &stage in &config.stages {
        cands = match stage {
            Stage::Pinning => demand_pinning_filter(&cands, tm, config.alpha_dp)?,
            Stage::Stretch => {
                stretch_bounding_filter(&cands, apsp, config.alpha_sb, config.one_hop_extension)?
            }
            Stage::Centrality if config.centrality_group_size == 0 => cands,
            Stage::Centrality => {
                let group = greedy_centrality_group::<S>(topo, apsp, config.centrality_group_size)?;
                centrality_filter(&cands, &group)
            }
            Stage::Domination => domination_filter(&cands, ecmp),
        };
        stats.push_stage(stage.name(), cands.path_count());
    }
    Ok((cands, stats))
}
