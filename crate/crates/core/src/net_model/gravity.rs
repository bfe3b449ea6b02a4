use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};

use super::{Demand, Topology, TrafficMatrix};
use crate::error::{Error, Result};

/// Random gravity model: every node gets an outgoing weight `o_i` and an
/// incoming weight `a_j`, both unit-exponential, and
/// `t_ij = total * o_i * a_j / sum_{u != v} o_u * a_v` for every ordered pair.
///
/// Demands are emitted for all ordered pairs in `(src, dst)` lexicographic
/// order. The result depends only on `n`, `total_volume` and `seed`.
pub fn generate_gravity_traffic(
    topo: &Topology,
    total_volume: f64,
    seed: u64,
) -> Result<TrafficMatrix> {
    let n = topo.node_count();
    if n < 2 {
        return Err(Error::TooFewNodes(n));
    }
    if !(total_volume > 0.0 && total_volume.is_finite()) {
        return Err(Error::Config(format!(
            "total volume must be positive, got {total_volume}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (outgoing, incoming) = draw_weights(n, &mut rng);

    let sum_out: f64 = outgoing.iter().sum();
    let sum_in: f64 = incoming.iter().sum();
    let diagonal: f64 = outgoing.iter().zip(&incoming).map(|(o, a)| o * a).sum();
    let normalizer = sum_out * sum_in - diagonal;

    let mut demands = Vec::with_capacity(n * (n - 1));
    for (src, o) in outgoing.iter().enumerate() {
        for (dst, a) in incoming.iter().enumerate() {
            if src == dst {
                continue;
            }
            let id = demands.len();
            demands.push(Demand {
                id,
                src,
                dst,
                volume: total_volume * o * a / normalizer,
                label: format!("demand_{id}"),
            });
        }
    }
    TrafficMatrix::new(demands)
}

fn draw_weights(n: usize, rng: &mut ChaCha8Rng) -> (Vec<f64>, Vec<f64>) {
    let outgoing = (0..n).map(|_| Exp1.sample(rng)).collect();
    let incoming = (0..n).map(|_| Exp1.sample(rng)).collect();
    (outgoing, incoming)
}

/// Gravity traffic restricted to `pairs` ordered pairs drawn uniformly
/// without replacement; volumes keep the gravity proportions `o_i * a_j` and
/// are normalized over the chosen pairs. Demands are in `(src, dst)` order.
pub fn generate_sparse_gravity_traffic(
    topo: &Topology,
    total_volume: f64,
    pairs: usize,
    seed: u64,
) -> Result<TrafficMatrix> {
    let n = topo.node_count();
    if n < 2 {
        return Err(Error::TooFewNodes(n));
    }
    let all = n * (n - 1);
    if pairs == 0 || pairs > all {
        return Err(Error::Config(format!("pair count must be in 1..={all}, got {pairs}")));
    }
    if !(total_volume > 0.0 && total_volume.is_finite()) {
        return Err(Error::Config(format!(
            "total volume must be positive, got {total_volume}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (outgoing, incoming) = draw_weights(n, &mut rng);
    let mut chosen: Vec<(usize, usize)> = index::sample(&mut rng, all, pairs)
        .into_iter()
        .map(|k| {
            let (src, rest) = (k / (n - 1), k % (n - 1));
            (src, if rest < src { rest } else { rest + 1 })
        })
        .collect();
    chosen.sort_unstable();
    let normalizer: f64 = chosen.iter().map(|&(i, j)| outgoing[i] * incoming[j]).sum();
    let demands = chosen
        .into_iter()
        .enumerate()
        .map(|(id, (src, dst))| Demand {
            id,
            src,
            dst,
            volume: total_volume * outgoing[src] * incoming[dst] / normalizer,
            label: format!("demand_{id}"),
        })
        .collect();
    TrafficMatrix::new(demands)
}
