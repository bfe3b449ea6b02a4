//! SR path domination and equivalence.
//!
//! Path `p2` dominates `p1` (same endpoints) when, comparing their unit-demand
//! load vectors over the union of both supports with absent arcs at zero,
//! `p2` is nowhere larger and somewhere strictly smaller. Replacing `p1` by
//! `p2` in any routing never raises an arc load, so dominated paths can be
//! dropped without losing optimality. Equal vectors are equivalent and only
//! one representative is kept: `Direct` if present, else the smallest node.

use std::cmp::Ordering;

use super::CandidateSet;
use crate::igp::{sr_path_loads, EcmpTable, PathLoadVector};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// First argument dominates the second.
    Dominates,
    /// Second argument dominates the first.
    DominatedBy,
    Equivalent,
    Incomparable,
}

/// Arcwise comparison of two load vectors over the union of their supports.
pub fn compare_loads<S: Scalar>(a: &PathLoadVector<S>, b: &PathLoadVector<S>) -> Relation {
    let (mut a_smaller, mut b_smaller) = (false, false);
    let zero = S::zero();
    let (la, lb) = (&a.loads, &b.loads);
    let (mut i, mut j) = (0, 0);
    while i < la.len() || j < lb.len() {
        let order = match (la.get(i), lb.get(j)) {
            (Some(x), Some(y)) => x.0.cmp(&y.0),
            (Some(_), None) => Ordering::Less,
            (None, _) => Ordering::Greater,
        };
        let (x, y) = match order {
            Ordering::Less => {
                i += 1;
                (&la[i - 1].1, &zero)
            }
            Ordering::Greater => {
                j += 1;
                (&zero, &lb[j - 1].1)
            }
            Ordering::Equal => {
                i += 1;
                j += 1;
                (&la[i - 1].1, &lb[j - 1].1)
            }
        };
        if x.definitely_lt(y) {
            a_smaller = true;
        } else if y.definitely_lt(x) {
            b_smaller = true;
        }
        if a_smaller && b_smaller {
            return Relation::Incomparable;
        }
    }
    match (a_smaller, b_smaller) {
        (false, false) => Relation::Equivalent,
        (true, false) => Relation::Dominates,
        (false, true) => Relation::DominatedBy,
        (true, true) => Relation::Incomparable,
    }
}

/// Indices of the paths that survive domination and equivalence pruning.
/// `paths` must be sorted in representative-preference order (`Direct`
/// first, then by middlepoint index).
pub fn surviving_paths<S: Scalar>(paths: &[PathLoadVector<S>]) -> Vec<usize> {
    let totals: Vec<S> = paths.iter().map(PathLoadVector::total).collect();
    // a dominator or an equal representative never has a larger total
    let mut by_total: Vec<usize> = (0..paths.len()).collect();
    by_total.sort_by(|&x, &y| {
        totals[x]
            .partial_cmp(&totals[y])
            .unwrap_or(Ordering::Equal)
            .then(x.cmp(&y))
    });
    let slack = |p: usize, q: usize| {
        S::tolerance() * S::from_count((paths[p].loads.len() + paths[q].loads.len() + 1) as u128)
    };
    let mut keep = Vec::new();
    for p1 in 0..paths.len() {
        let removed = by_total
            .iter()
            .copied()
            .take_while(|&p2| totals[p2] <= totals[p1].clone() + slack(p1, p2))
            .filter(|&p2| p2 != p1)
            .any(|p2| match compare_loads(&paths[p2], &paths[p1]) {
                Relation::Dominates => true,
                Relation::Equivalent => p2 < p1,
                _ => false,
            });
        if !removed {
            keep.push(p1);
        }
    }
    keep
}

/// Removes dominated candidates and all but one of each equivalence class.
pub fn domination_filter<S: Scalar>(cands: &CandidateSet, ecmp: &EcmpTable<S>) -> CandidateSet {
    let mut out = cands.clone();
    for entry in out.entries_mut().iter_mut().filter(|e| e.len() > 1) {
        let paths: Vec<PathLoadVector<S>> = entry
            .candidates()
            .iter()
            .map(|&c| sr_path_loads(entry.src, entry.dst, c, ecmp).expect("demand endpoints differ"))
            .collect();
        let keep = surviving_paths(&paths);
        let mut position = 0;
        entry.retain(|_| {
            let kept = keep.binary_search(&position).is_ok();
            position += 1;
            kept
        });
    }
    out
}
