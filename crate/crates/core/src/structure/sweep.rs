//! Exhaustive checks over every connected labelled graph on few vertices.

use std::time::Instant;

use serde::Serialize;

use super::{colouring_from_group, find_witness, group_search, Colour, Perm, StructureError};
use crate::graph::{edge_slot_count, graph_from_mask, mask_is_connected, Graph};
use crate::pebble::{GameState, DEFAULT_STATE_CAP};

/// One instance that broke the checked property.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepFailure {
    pub n: usize,
    pub k: usize,
    pub edges: Vec<[usize; 2]>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    /// (graph, k) instances examined.
    pub checked: u64,
    pub non_pebble_win: u64,
    pub failures: u64,
    pub elapsed_ms: u128,
    pub failures_detail: Vec<SweepFailure>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    /// Uses rayon when the `parallel` feature is on, otherwise sequential.
    Parallel,
}

#[derive(Default)]
struct Tally {
    checked: u64,
    non_pebble_win: u64,
    failures: Vec<SweepFailure>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.non_pebble_win += other.non_pebble_win;
        self.failures.extend(other.failures);
        self
    }
}

type Check = fn(&Graph, usize, &mut Tally) -> Result<(), StructureError>;

fn failure(g: &Graph, k: usize, reason: &str) -> SweepFailure {
    SweepFailure { n: g.n(), k, edges: g.edges().map(|(u, v)| [u, v]).collect(), reason: reason.into() }
}

fn check_witness(g: &Graph, k: usize, tally: &mut Tally) -> Result<(), StructureError> {
    let group = group_search(g, &GameState::initial(k), DEFAULT_STATE_CAP, true)?;
    tally.checked += 1;
    if group.is_symmetric() {
        return Ok(());
    }
    tally.non_pebble_win += 1;
    let Some(w) = find_witness(g, k) else {
        tally.failures.push(failure(g, k, "no conforming bare path"));
        return Ok(());
    };
    let shape_ok = w.path.is_valid_in(g) && w.path.complement_size(g) <= k;
    let edges_ok = if w.cycle { g.is_cycle() } else { w.path.edges().all(|(u, v)| g.is_bridge(u, v)) };
    if !(shape_ok && edges_ok) {
        tally.failures.push(failure(g, k, "witness violates its own contract"));
    }
    Ok(())
}

fn check_colouring(g: &Graph, k: usize, tally: &mut Tally) -> Result<(), StructureError> {
    let group = group_search(g, &GameState::initial(k), DEFAULT_STATE_CAP, false)?;
    tally.checked += 1;
    if group.is_symmetric() {
        return Ok(());
    }
    tally.non_pebble_win += 1;
    let Some(c) = colouring_from_group(&group) else {
        tally.failures.push(failure(g, k, "no colouring for a non-win group"));
        return Ok(());
    };
    let (red, blue) = (c.class(Colour::Red), c.class(Colour::Blue));
    if red.is_empty() || blue.is_empty() {
        tally.failures.push(failure(g, k, "empty colour class"));
    } else if red.iter().any(|&i| blue.iter().any(|&j| group.contains(&Perm::transposition(k, i, j)))) {
        tally.failures.push(failure(g, k, "cross-class transposition in group"));
    }
    Ok(())
}

fn run_masks(n: usize, masks: std::ops::Range<u64>, check: Check) -> Result<Tally, StructureError> {
    let mut tally = Tally::default();
    for mask in masks {
        if !mask_is_connected(n, mask) {
            continue;
        }
        let g = graph_from_mask(n, mask);
        for k in 1..=n.saturating_sub(2) {
            check(&g, k, &mut tally)?;
        }
    }
    Ok(tally)
}

#[cfg(feature = "parallel")]
const CHUNK: u64 = 1 << 12;

fn sweep(n_max: usize, strategy: Strategy, check: Check) -> Result<SweepReport, StructureError> {
    if !(1..=7).contains(&n_max) {
        return Err(StructureError::SweepRange(n_max));
    }
    let start = Instant::now();
    let mut total = Tally::default();
    for n in 1..=n_max {
        let masks = 1u64 << edge_slot_count(n);
        let tally = match strategy {
            Strategy::Parallel => run_parallel(n, masks, check)?,
            Strategy::Sequential => run_masks(n, 0..masks, check)?,
        };
        total = total.merge(tally);
    }
    total.failures.sort_by(|a, b| (a.n, &a.edges, a.k).cmp(&(b.n, &b.edges, b.k)));
    Ok(SweepReport {
        checked: total.checked,
        non_pebble_win: total.non_pebble_win,
        failures: total.failures.len() as u64,
        elapsed_ms: start.elapsed().as_millis(),
        failures_detail: total.failures,
    })
}

#[cfg(feature = "parallel")]
fn run_parallel(n: usize, masks: u64, check: Check) -> Result<Tally, StructureError> {
    use rayon::prelude::*;
    (0..masks.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| run_masks(n, c * CHUNK..((c + 1) * CHUNK).min(masks), check))
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))
}

#[cfg(not(feature = "parallel"))]
fn run_parallel(n: usize, masks: u64, check: Check) -> Result<Tally, StructureError> {
    run_masks(n, 0..masks, check)
}

/// Every connected labelled graph with at most `n_max` vertices and every
/// `1 <= k <= n - 2`: each instance that is not `k`-pebble-win must have a
/// bare path missing at most `k` vertices whose edges are all bridges, or
/// be a cycle.
pub fn verify_structure_theorem(n_max: usize) -> Result<SweepReport, StructureError> {
    verify_structure_theorem_with(n_max, Strategy::Parallel)
}

pub fn verify_structure_theorem_with(n_max: usize, strategy: Strategy) -> Result<SweepReport, StructureError> {
    sweep(n_max, strategy, check_witness)
}

/// Over the same instances, every non-win group yields a colouring with two
/// non-empty classes and no transposition across them.
pub fn verify_colouring_contract(n_max: usize) -> Result<SweepReport, StructureError> {
    sweep(n_max, Strategy::Parallel, check_colouring)
}
