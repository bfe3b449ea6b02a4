//! Exact 2SR optimum by depth-first branch and bound.
//!
//! Demands are decided in order of descending volume. A partial assignment is
//! bounded by the utilization of arc groups (single arcs and the outgoing and
//! incoming arcs of each node) carrying the decided load plus, for every
//! undecided demand, the load that all of its remaining choices put on the
//! group. Loads are non-negative and additive, so the bound never exceeds the
//! best completion.
//!
//! Each node also filters the undecided demands: a choice that alone would
//! lift some group to the incumbent's utilization cannot lead to a better
//! solution and is dropped, which in turn raises the unavoidable shares.

use std::cmp::Ordering;
use std::time::Instant;

use super::config::{SolveReport, SolverConfig};
use crate::candidates::CandidateSet;
use crate::error::{Error, Result};
use crate::igp::{sr_path_loads, Candidate, EcmpTable};
use crate::milp::{SolveStatus, SrSolution};
use crate::net_model::{ArcId, DemandId, Topology, TrafficMatrix};
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
struct Choice<S> {
    candidate: Candidate,
    /// Volume-scaled arc loads.
    loads: Vec<(ArcId, S)>,
    /// The same loads summed per arc group, sorted by group.
    groups: Vec<(usize, S)>,
}

/// Search space of one instance: undecided demands and their choices.
#[derive(Debug, Clone)]
pub struct OracleProblem<S> {
    demand_count: usize,
    order: Vec<DemandId>,
    choices: Vec<Vec<Choice<S>>>,
    capacity: Vec<S>,
    group_capacity: Vec<S>,
    /// Pinned load per arc.
    pinned: Vec<S>,
    /// Unavoidable share of each undecided demand over all of its choices.
    floors: Vec<Vec<(usize, S)>>,
    /// Pinned load plus every unavoidable share, per arc group.
    base: Vec<S>,
}

/// Result of a search.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleOutcome<S> {
    /// Candidate per demand id.
    pub assignment: Vec<Candidate>,
    pub theta: S,
    pub nodes: u64,
    /// False if the time limit stopped the search before optimality was proven.
    pub proven: bool,
}

fn arc_groups(topo: &Topology, arc: ArcId) -> [usize; 3] {
    let (m, n) = (topo.arc_count(), topo.node_count());
    let a = topo.arc(arc);
    [arc, m + a.src, m + n + a.dst]
}

impl<S: Scalar> OracleProblem<S> {
    pub fn new(
        topo: &Topology,
        tm: &TrafficMatrix,
        cands: &CandidateSet,
        ecmp: &EcmpTable<S>,
    ) -> Result<Self> {
        if cands.demand_count() != tm.len() {
            return Err(Error::DemandMismatch);
        }
        let (m, n) = (topo.arc_count(), topo.node_count());
        let capacity: Vec<S> = topo.arcs().iter().map(|a| S::from_real(a.capacity)).collect();
        let mut group_capacity = capacity.clone();
        group_capacity.extend((0..n).map(|v| sum(topo.out_arcs(v).iter().map(|&e| &capacity[e]))));
        group_capacity.extend((0..n).map(|v| sum(topo.in_arcs(v).iter().map(|&e| &capacity[e]))));

        let mut pinned = vec![S::zero(); m];
        let mut base = vec![S::zero(); m + 2 * n];
        let mut undecided = Vec::new();
        for (demand, entry) in tm.demands().iter().zip(cands.entries()) {
            if entry.demand != demand.id || entry.src != demand.src || entry.dst != demand.dst {
                return Err(Error::DemandMismatch);
            }
            if entry.is_empty() {
                return Err(Error::EmptyCandidates(demand.id));
            }
            let volume = S::from_real(demand.volume);
            let mut choices = Vec::with_capacity(entry.len());
            for &candidate in entry.candidates() {
                let path = sr_path_loads(demand.src, demand.dst, candidate, ecmp)?;
                let loads: Vec<_> = path
                    .loads
                    .into_iter()
                    .map(|(e, g)| (e, volume.clone() * g))
                    .collect();
                let mut groups: Vec<(usize, S)> = loads
                    .iter()
                    .flat_map(|(e, l)| arc_groups(topo, *e).map(|s| (s, l.clone())))
                    .collect();
                groups.sort_by_key(|(s, _)| *s);
                choices.push(Choice {
                    candidate,
                    loads,
                    groups: merge_sorted(groups),
                });
            }
            if entry.pinned {
                for (e, l) in &choices[0].loads {
                    pinned[*e] = pinned[*e].clone() + l.clone();
                }
                for (s, l) in &choices[0].groups {
                    base[*s] = base[*s].clone() + l.clone();
                }
            } else {
                undecided.push((demand.id, demand.volume, choices));
            }
        }
        undecided.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(Ordering::Equal).then(a.0.cmp(&b.0)));

        let choices: Vec<Vec<Choice<S>>> = undecided.iter().map(|u| u.2.clone()).collect();
        let floors: Vec<Vec<(usize, S)>> = choices
            .iter()
            .map(|cs| unavoidable_share(&cs.iter().map(|c| &c.groups[..]).collect::<Vec<_>>()))
            .collect();
        for floor in &floors {
            for (s, l) in floor {
                base[*s] = base[*s].clone() + l.clone();
            }
        }
        Ok(Self {
            demand_count: tm.len(),
            order: undecided.iter().map(|u| u.0).collect(),
            choices,
            capacity,
            group_capacity,
            pinned,
            floors,
            base,
        })
    }

    /// Undecided demands in search order.
    pub fn order(&self) -> &[DemandId] {
        &self.order
    }

    /// Number of choices of the demand decided at `depth`.
    pub fn choice_count(&self, depth: usize) -> usize {
        self.choices[depth].len()
    }

    pub fn candidate(&self, depth: usize, choice: usize) -> Candidate {
        self.choices[depth][choice].candidate
    }

    fn arc_loads(&self, prefix: &[usize]) -> Vec<S> {
        let mut load = self.pinned.clone();
        for (depth, &c) in prefix.iter().enumerate() {
            for (e, l) in &self.choices[depth][c].loads {
                load[*e] = load[*e].clone() + l.clone();
            }
        }
        load
    }

    fn max_ratio(values: &[S], capacity: &[S]) -> S {
        values
            .iter()
            .zip(capacity)
            .map(|(v, c)| v.clone() / c.clone())
            .fold(S::zero(), S::max_of)
    }

    /// Utilization of the decided demands alone (pinned load included).
    pub fn decided_bound(&self, prefix: &[usize]) -> S {
        Self::max_ratio(&self.arc_loads(prefix), &self.capacity)
    }

    /// Group bound of the subtree below `prefix`: decided load plus the
    /// unavoidable share of every undecided demand over all its choices.
    pub fn prefix_bound(&self, prefix: &[usize]) -> S {
        let mut u = self.base.clone();
        for (depth, &c) in prefix.iter().enumerate() {
            add_difference(&mut u, &self.choices[depth][c].groups, &self.floors[depth], |_, _| {});
        }
        Self::max_ratio(&u, &self.group_capacity)
    }

    /// Maximum utilization of a complete choice vector.
    pub fn evaluate(&self, choices: &[usize]) -> S {
        assert_eq!(choices.len(), self.order.len(), "complete assignment expected");
        self.decided_bound(choices)
    }

    /// Each demand in order takes the choice with the smallest running
    /// maximum utilization; ties go to the smaller utilization on the
    /// choice's own arcs, then to the earlier candidate.
    pub fn greedy(&self) -> (Vec<usize>, S) {
        let mut load = self.pinned.clone();
        let mut running = Self::max_ratio(&load, &self.capacity);
        let mut picks = Vec::with_capacity(self.order.len());
        for choices in &self.choices {
            let mut best: Option<(S, S, usize)> = None;
            for (i, choice) in choices.iter().enumerate() {
                let local = choice
                    .loads
                    .iter()
                    .map(|(e, l)| (load[*e].clone() + l.clone()) / self.capacity[*e].clone())
                    .fold(S::zero(), S::max_of);
                let overall = S::max_of(running.clone(), local.clone());
                let better = match &best {
                    None => true,
                    Some((o, l, _)) => overall < *o || (overall == *o && local < *l),
                };
                if better {
                    best = Some((overall, local, i));
                }
            }
            let (overall, _, i) = best.expect("candidate sets are non-empty");
            for (e, l) in &choices[i].loads {
                load[*e] = load[*e].clone() + l.clone();
            }
            running = overall;
            picks.push(i);
        }
        (picks, running)
    }

    /// Runs the search from the greedy incumbent.
    pub fn solve(&self, node_limit: u64, time_limit: f64) -> Result<OracleOutcome<S>> {
        let (incumbent, value) = self.greedy();
        let mut search = Search {
            problem: self,
            u: self.base.clone(),
            domains: self.choices.iter().map(|c| (0..c.len()).collect()).collect(),
            floors: self.floors.clone(),
            trail: Vec::new(),
            path: Vec::with_capacity(self.order.len()),
            best: incumbent,
            best_value: value,
            nodes: 0,
            node_limit,
            time_limit,
            start: Instant::now(),
            timed_out: false,
        };
        search.descend(0)?;
        Ok(OracleOutcome {
            assignment: self.assignment(&search.best),
            theta: search.best_value,
            nodes: search.nodes,
            proven: !search.timed_out,
        })
    }

    /// Candidate per demand id; pinned demands take `Direct`.
    pub fn assignment(&self, choices: &[usize]) -> Vec<Candidate> {
        let mut out = vec![Candidate::Direct; self.demand_count];
        for ((&demand, options), &c) in self.order.iter().zip(&self.choices).zip(choices) {
            out[demand] = options[c].candidate;
        }
        out
    }
}

enum Undo<S> {
    Group(usize, S),
    Domain(usize, Vec<usize>, Vec<(usize, S)>),
}

struct Search<'a, S> {
    problem: &'a OracleProblem<S>,
    /// Arc-group loads: decided plus current unavoidable shares.
    u: Vec<S>,
    /// Remaining choices per depth.
    domains: Vec<Vec<usize>>,
    /// Unavoidable share over the remaining choices, per depth.
    floors: Vec<Vec<(usize, S)>>,
    trail: Vec<Undo<S>>,
    path: Vec<usize>,
    best: Vec<usize>,
    best_value: S,
    nodes: u64,
    node_limit: u64,
    time_limit: f64,
    start: Instant,
    timed_out: bool,
}

impl<S: Scalar> Search<'_, S> {
    fn descend(&mut self, depth: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(Error::SearchLimit(format!(
                "more than {} branch-and-bound nodes",
                self.node_limit
            )));
        }
        if self.nodes % 1024 == 0 && self.start.elapsed().as_secs_f64() > self.time_limit {
            self.timed_out = true;
        }
        if self.timed_out {
            return Ok(());
        }
        let mark = self.trail.len();
        let result = self.visit(depth);
        self.unwind(mark);
        result
    }

    fn visit(&mut self, depth: usize) -> Result<()> {
        let p = self.problem;
        if depth == p.order.len() {
            // every group holds its exact load; single arcs give the maximum
            let m = p.capacity.len();
            let value = OracleProblem::max_ratio(&self.u[..m], &p.capacity);
            if value < self.best_value {
                self.best_value = value;
                self.best = self.path.clone();
            }
            return Ok(());
        }
        if !self.propagate(depth) {
            return Ok(());
        }
        let bound = OracleProblem::max_ratio(&self.u, &p.group_capacity);
        if !bound.definitely_lt(&self.best_value) {
            return Ok(());
        }

        let mut children: Vec<(S, usize)> = self.domains[depth]
            .iter()
            .map(|&k| {
                let mut child = bound.clone();
                let floor = &self.floors[depth];
                for_each_difference(&p.choices[depth][k].groups, floor, |s, delta| {
                    let ratio = (self.u[s].clone() + delta) / p.group_capacity[s].clone();
                    child = S::max_of(child.clone(), ratio);
                });
                (child, k)
            })
            .collect();
        children.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal).then(a.1.cmp(&b.1)));

        for (child, k) in children {
            if !child.definitely_lt(&self.best_value) {
                break;
            }
            let mark = self.trail.len();
            self.restrict(depth, vec![k]);
            self.path.push(k);
            let result = self.descend(depth + 1);
            self.path.pop();
            self.unwind(mark);
            result?;
            if self.timed_out {
                break;
            }
        }
        Ok(())
    }

    /// Drops the choices that cannot beat the incumbent until nothing
    /// changes. False if some demand has no choice left.
    fn propagate(&mut self, depth: usize) -> bool {
        let p = self.problem;
        let tolerance = S::tolerance();
        let limit: Vec<S> = p
            .group_capacity
            .iter()
            .map(|c| (self.best_value.clone() - tolerance.clone()) * c.clone())
            .collect();
        loop {
            let mut changed = false;
            for level in depth..p.order.len() {
                let floor = &self.floors[level];
                let keep: Vec<usize> = self.domains[level]
                    .iter()
                    .copied()
                    .filter(|&k| {
                        let mut fits = true;
                        for_each_difference(&p.choices[level][k].groups, floor, |s, delta| {
                            fits &= self.u[s].clone() + delta < limit[s];
                        });
                        fits
                    })
                    .collect();
                if keep.is_empty() {
                    return false;
                }
                if keep.len() < self.domains[level].len() {
                    changed |= self.restrict(level, keep);
                }
            }
            if !changed {
                return true;
            }
        }
    }

    /// Narrows the choices at `level`, raising the group loads by the growth
    /// of its unavoidable share. True if some group load grew.
    fn restrict(&mut self, level: usize, keep: Vec<usize>) -> bool {
        let p = self.problem;
        let floor = unavoidable_share(
            &keep
                .iter()
                .map(|&k| &p.choices[level][k].groups[..])
                .collect::<Vec<_>>(),
        );
        let mut grew = false;
        let (u, trail) = (&mut self.u, &mut self.trail);
        add_difference(u, &floor, &self.floors[level], |s, old| {
            grew = true;
            trail.push(Undo::Group(s, old));
        });
        let old_domain = std::mem::replace(&mut self.domains[level], keep);
        let old_floor = std::mem::replace(&mut self.floors[level], floor);
        self.trail.push(Undo::Domain(level, old_domain, old_floor));
        grew
    }

    fn unwind(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().expect("trail above mark") {
                Undo::Group(s, old) => self.u[s] = old,
                Undo::Domain(level, domain, floor) => {
                    self.domains[level] = domain;
                    self.floors[level] = floor;
                }
            }
        }
    }
}

/// Calls `f(group, a - b)` for every group in either sorted sparse vector
/// where the difference is non-zero (absent entries are zero).
fn for_each_difference<S: Scalar>(a: &[(usize, S)], b: &[(usize, S)], mut f: impl FnMut(usize, S)) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (s, delta) = match (a.get(i), b.get(j)) {
            (Some((x, la)), Some((y, lb))) if x == y => {
                i += 1;
                j += 1;
                (*x, la.clone() - lb.clone())
            }
            (Some((x, la)), Some((y, _))) if x < y => {
                i += 1;
                (*x, la.clone())
            }
            (Some((x, la)), None) => {
                i += 1;
                (*x, la.clone())
            }
            (_, Some((y, lb))) => {
                j += 1;
                (*y, S::zero() - lb.clone())
            }
            (None, None) => unreachable!(),
        };
        if !delta.is_zero() {
            f(s, delta);
        }
    }
}

/// `u += a - b`; `changed(group, previous value)` runs before each update.
fn add_difference<S: Scalar>(
    u: &mut [S],
    a: &[(usize, S)],
    b: &[(usize, S)],
    mut changed: impl FnMut(usize, S),
) {
    for_each_difference(a, b, |s, delta| {
        changed(s, u[s].clone());
        u[s] = u[s].clone() + delta;
    });
}

fn sum<'a, S: Scalar>(values: impl Iterator<Item = &'a S>) -> S {
    values.fold(S::zero(), |a, v| a + v.clone())
}

fn merge_sorted<S: Scalar>(sorted: Vec<(usize, S)>) -> Vec<(usize, S)> {
    let mut out: Vec<(usize, S)> = Vec::with_capacity(sorted.len());
    for (s, l) in sorted {
        match out.last_mut() {
            Some((t, acc)) if *t == s => *acc = acc.clone() + l,
            _ => out.push((s, l)),
        }
    }
    out
}

/// Per-group minimum load over all choices; groups missed by some choice
/// have no unavoidable share.
fn unavoidable_share<S: Scalar>(per_choice: &[&[(usize, S)]]) -> Vec<(usize, S)> {
    let Some((first, rest)) = per_choice.split_first() else {
        return Vec::new();
    };
    first
        .iter()
        .filter_map(|(s, l)| {
            rest.iter().try_fold(l.clone(), |min, other| {
                other
                    .binary_search_by_key(s, |(t, _)| *t)
                    .ok()
                    .map(|p| if other[p].1 < min { other[p].1.clone() } else { min })
            })
            .map(|min| (*s, min))
        })
        .filter(|(_, l)| *l > S::zero())
        .collect()
}

/// Exact optimum over the candidate sets. Returns status `time-limit` with
/// the best assignment found if the time limit interrupts the search.
pub fn solve_exact_oracle<S: Scalar>(
    topo: &Topology,
    tm: &TrafficMatrix,
    cands: &CandidateSet,
    ecmp: &EcmpTable<S>,
    config: &SolverConfig,
) -> Result<SolveReport> {
    config.validate()?;
    let start = Instant::now();
    let problem = OracleProblem::new(topo, tm, cands, ecmp)?;
    let outcome = problem.solve(config.node_limit, config.time_limit)?;
    let solve_time = start.elapsed().as_secs_f64();
    let status = if outcome.proven {
        SolveStatus::Optimal
    } else {
        SolveStatus::TimeLimit
    };
    let theta = outcome.theta.to_real();
    Ok(SolveReport {
        solution: Some(SrSolution {
            assignment: outcome.assignment,
            theta,
            status,
            reported_objective: theta,
            reported_gap: outcome.proven.then_some(0.0),
            wall_time: solve_time,
        }),
        solve_time,
        preprocess_time: 0.0,
        status,
    })
}
