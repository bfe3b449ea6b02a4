//! Synthetic topologies for benchmarks and tests when no Repetita files are
//! at hand. All links are bidirectional with unit IGP weight.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Topology;
use crate::error::{Error, Result};

/// Capacity menu for heterogeneous links.
pub const CAPACITY_PALETTE: [f64; 4] = [100.0, 250.0, 400.0, 1000.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Capacities {
    /// Every link has capacity 1.
    Unit,
    /// Each link draws from [`CAPACITY_PALETTE`].
    Heterogeneous,
}

impl std::str::FromStr for Capacities {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unit" => Ok(Capacities::Unit),
            "heterogeneous" => Ok(Capacities::Heterogeneous),
            other => Err(Error::Config(format!("unknown capacity model {other:?}"))),
        }
    }
}

/// Random connected backbone with about `links_per_node * n` links: a random
/// attachment tree plus uniformly drawn chords, heterogeneous capacities.
pub fn random_backbone(n: usize, links_per_node: f64, seed: u64) -> Result<Topology> {
    random_backbone_with(n, links_per_node, Capacities::Heterogeneous, seed)
}

pub fn random_backbone_with(
    n: usize,
    links_per_node: f64,
    capacities: Capacities,
    seed: u64,
) -> Result<Topology> {
    if n < 2 {
        return Err(Error::TooFewNodes(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_links = n * (n - 1) / 2;
    let target = ((links_per_node * n as f64).round() as usize).clamp(n - 1, max_links);

    let mut seen = HashSet::new();
    let mut links = Vec::with_capacity(target);
    let capacity = |rng: &mut ChaCha8Rng| match capacities {
        Capacities::Unit => 1.0,
        Capacities::Heterogeneous => CAPACITY_PALETTE[rng.random_range(0..CAPACITY_PALETTE.len())],
    };
    for v in 1..n {
        let u = rng.random_range(0..v);
        seen.insert((u, v));
        let c = capacity(&mut rng);
        links.push((u, v, 1, c));
    }
    while links.len() < target {
        let a = rng.random_range(0..n);
        let b = rng.random_range(0..n);
        let key = (a.min(b), a.max(b));
        if a == b || !seen.insert(key) {
            continue;
        }
        let c = capacity(&mut rng);
        links.push((key.0, key.1, 1, c));
    }
    Topology::from_links(n, &links)
}

/// `hubs` fully meshed core nodes, each with `stubs_per_hub` single-homed
/// leaves. Core links have capacity 1000, access links 100.
///
/// Hubs are nodes `0..hubs`; the leaves of hub `h` follow in one block.
pub fn star_of_stars(hubs: usize, stubs_per_hub: usize) -> Result<Topology> {
    let n = hubs * (1 + stubs_per_hub);
    let mut links = Vec::new();
    for a in 0..hubs {
        for b in a + 1..hubs {
            links.push((a, b, 1, 1000.0));
        }
    }
    for h in 0..hubs {
        for s in 0..stubs_per_hub {
            links.push((h, hubs + h * stubs_per_hub + s, 1, 100.0));
        }
    }
    let topo = Topology::from_links(n, &links)?;
    topo.check_strongly_connected()?;
    Ok(topo)
}
