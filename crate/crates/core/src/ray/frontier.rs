//! Exact search for vertex-disjoint paths joining fixed terminal pairs.
//!
//! A frontier-based dynamic programme over a bandwidth-friendly edge order:
//! each state records, for every frontier vertex, whether it is unused,
//! finished, or the open end of a partial path together with what lies at
//! that path's other end (a terminal of some pair, or another frontier
//! vertex). States are merged when equal, so infeasibility is proved by
//! exhausting them.

use std::collections::VecDeque;

use rustc_hash::FxHashMap;

use super::RayError;
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrontierOutcome {
    /// One path per pair, in pair order.
    Linked(Vec<Vec<usize>>),
    Infeasible,
}

/// Widest frontier a state can describe.
pub const MAX_FRONTIER: usize = 46;
/// Parent links kept for rebuilding the paths, about 400 MB.
const PARENT_BUDGET: usize = 100_000_000;

const FREE: u8 = 0;
const DONE: u8 = 1;
const LABEL: u8 = 2;
const FLOAT: u8 = 32;
const TOOK: u32 = 1 << 31;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct State {
    mask: u16,
    cells: [u8; MAX_FRONTIER],
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum End {
    Free,
    Terminal(u8),
    Label(u8),
    Float(u8),
}

fn classify(val: u8, term: Option<u8>) -> Option<End> {
    match val {
        FREE => Some(term.map_or(End::Free, End::Terminal)),
        DONE => None,
        v if v >= FLOAT => Some(End::Float(v - FLOAT)),
        v => Some(End::Label(v - LABEL)),
    }
}

/// Vertex order from a breadth-first sweep started at a minimum-degree
/// vertex of each component, visiting neighbours by increasing degree.
fn sweep_order(g: &Graph, active: &[bool]) -> Vec<usize> {
    let n = g.n();
    let deg: Vec<usize> = (0..n).map(|v| g.neighbours(v).iter().filter(|&&w| active[w]).count()).collect();
    let mut seen = vec![false; n];
    let mut order = Vec::new();
    let mut starts: Vec<usize> = (0..n).filter(|&v| active[v]).collect();
    starts.sort_by_key(|&v| (deg[v], v));
    for s in starts {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            let mut nbrs: Vec<usize> = g.neighbours(v).iter().copied().filter(|&w| active[w] && !seen[w]).collect();
            nbrs.sort_by_key(|&w| (deg[w], w));
            for w in nbrs {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    order
}

fn normalize(vals: &mut [u8]) {
    let mut map = [u8::MAX; MAX_FRONTIER];
    let mut next = 0u8;
    for v in vals.iter_mut() {
        if *v >= FLOAT {
            let id = (*v - FLOAT) as usize;
            if map[id] == u8::MAX {
                map[id] = next;
                next += 1;
            }
            *v = FLOAT + map[id];
        }
    }
}

/// Edges in processing order for a vertex order, and the largest frontier
/// that order produces.
fn edge_order(g: &Graph, active: &[bool], order: &[usize]) -> (Vec<(usize, usize)>, usize) {
    let n = g.n();
    let mut rank = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for &v in order {
        let mut earlier: Vec<usize> =
            g.neighbours(v).iter().copied().filter(|&u| active[u] && rank[u] < rank[v]).collect();
        earlier.sort_by_key(|&u| rank[u]);
        edges.extend(earlier.into_iter().map(|u| (u, v)));
    }
    let mut last = vec![usize::MAX; n];
    for (e, &(u, v)) in edges.iter().enumerate() {
        last[u] = e;
        last[v] = e;
    }
    let (mut open, mut width) = (0usize, 0usize);
    let mut seen = vec![false; n];
    for (e, &(u, v)) in edges.iter().enumerate() {
        for x in [u, v] {
            if !seen[x] {
                seen[x] = true;
                open += 1;
            }
        }
        width = width.max(open);
        open -= [u, v].iter().filter(|&&x| last[x] == e).count();
    }
    (edges, width)
}

/// Vertex-disjoint paths joining each `(s, t)` pair in `g`, avoiding
/// `blocked` vertices. `cap` bounds the states held for a single edge step.
pub fn fixed_pair_paths(
    g: &Graph,
    pairs: &[(usize, usize)],
    blocked: &[bool],
    cap: usize,
) -> Result<FrontierOutcome, RayError> {
    fixed_pair_paths_ordered(g, pairs, blocked, cap, &[])
}

/// As [`fixed_pair_paths`], also trying each of `orders` (vertex sequences
/// of `g`) and sweeping along whichever keeps the frontier smallest.
///
/// Only solutions using as few vertices as possible are explored: in those,
/// no path has an unused edge between two of its own vertices, so states
/// that skip such an edge between two open ends are dropped. An unused
/// vertex other than a terminal with one edge left is marked finished, which
/// merges states that differ only there.
pub fn fixed_pair_paths_ordered(
    g: &Graph,
    pairs: &[(usize, usize)],
    blocked: &[bool],
    cap: usize,
    orders: &[Vec<usize>],
) -> Result<FrontierOutcome, RayError> {
    let n = g.n();
    assert!(pairs.len() <= 16, "at most 16 pairs");
    let mut term: Vec<Option<u8>> = vec![None; n];
    let mut active: Vec<bool> = blocked.iter().map(|&b| !b).collect();
    let mut need: u16 = 0;
    for (c, &(s, t)) in pairs.iter().enumerate() {
        for v in [s, t] {
            if blocked[v] || term[v].is_some_and(|o| o as usize != c) {
                return Ok(FrontierOutcome::Infeasible);
            }
            term[v] = Some(c as u8);
        }
        if s == t {
            active[s] = false;
        } else {
            need |= 1 << c;
        }
    }

    let mut best = edge_order(g, &active, &sweep_order(g, &active));
    for order in orders {
        let order: Vec<usize> = order.iter().copied().filter(|&v| active[v]).collect();
        let cand = edge_order(g, &active, &order);
        if cand.1 <= best.1 {
            best = cand;
        }
    }
    let (edges, width) = best;
    if width > MAX_FRONTIER {
        return Err(RayError::FrontierWidth { width, max: MAX_FRONTIER });
    }
    let mut last = vec![usize::MAX; n];
    let mut pending = vec![0usize; n];
    for (e, &(u, v)) in edges.iter().enumerate() {
        last[u] = e;
        last[v] = e;
        pending[u] += 1;
        pending[v] += 1;
    }
    for (c, &(s, t)) in pairs.iter().enumerate() {
        if need >> c & 1 == 1 && (last[s] == usize::MAX || last[t] == usize::MAX) {
            return Ok(FrontierOutcome::Infeasible);
        }
    }

    // layers[e][i] is the parent of state i after edge e, with TOOK set when
    // the edge was used
    let mut layers: Vec<Vec<u32>> = Vec::new();
    let mut stored = 0usize;
    let mut keep_parents = true;
    let mut frontier: Vec<usize> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    let mut states = vec![State { mask: 0, cells: [FREE; MAX_FRONTIER] }];
    let mut index: FxHashMap<State, u32> = FxHashMap::default();
    for (e, &(u, v)) in edges.iter().enumerate() {
        for x in [u, v] {
            if slot[x] == usize::MAX {
                slot[x] = frontier.len();
                frontier.push(x);
            }
        }
        let w = frontier.len();
        let leaving: Vec<usize> = [u, v].into_iter().filter(|&x| last[x] == e).collect();
        let keep: Vec<usize> = (0..w).filter(|&i| !leaving.contains(&frontier[i])).collect();
        let (su, sv) = (slot[u], slot[v]);
        pending[u] -= 1;
        pending[v] -= 1;
        // an unused inner vertex with one edge left can never join a path
        let dead: Vec<usize> =
            [u, v].into_iter().filter(|&x| term[x].is_none() && pending[x] == 1).map(|x| slot[x]).collect();

        index.clear();
        for (pi, st) in states.iter().enumerate() {
            if wasteful(&st.cells, su, sv, term[u], term[v]) {
                // leaving the edge out would make a path with a shortcut
                let mut cells = st.cells;
                let mut mask = st.mask;
                if join(&mut cells[..w], &mut mask, su, sv, term[u], term[v]) {
                    push(&mut index, cells, mask, &dead, &keep, &leaving, &slot, &term, pi as u32 | TOOK, cap)?;
                }
                continue;
            }
            push(&mut index, st.cells, st.mask, &dead, &keep, &leaving, &slot, &term, pi as u32, cap)?;
            let mut cells = st.cells;
            let mut mask = st.mask;
            if join(&mut cells[..w], &mut mask, su, sv, term[u], term[v]) {
                push(&mut index, cells, mask, &dead, &keep, &leaving, &slot, &term, pi as u32 | TOOK, cap)?;
            }
        }
        for &x in &leaving {
            slot[x] = usize::MAX;
        }
        frontier = keep.iter().map(|&i| frontier[i]).collect();
        for (i, &x) in frontier.iter().enumerate() {
            slot[x] = i;
        }
        states.clear();
        let mut layer = Vec::with_capacity(if keep_parents { index.len() } else { 0 });
        for (st, parent) in index.drain() {
            states.push(st);
            if keep_parents {
                layer.push(parent);
            }
        }
        if keep_parents {
            stored += layer.len();
            if stored > PARENT_BUDGET {
                keep_parents = false;
                layers = Vec::new();
            } else {
                layers.push(layer);
            }
        }
        if states.is_empty() {
            return Ok(FrontierOutcome::Infeasible);
        }
    }

    let Some(mut at) = states.iter().position(|st| st.mask == need) else {
        return Ok(FrontierOutcome::Infeasible);
    };
    if !keep_parents {
        return Err(RayError::SearchCap { cap: PARENT_BUDGET });
    }
    let mut chosen = vec![Vec::new(); n];
    for e in (0..edges.len()).rev() {
        let parent = layers[e][at];
        if parent & TOOK != 0 {
            let (u, v) = edges[e];
            chosen[u].push(v);
            chosen[v].push(u);
        }
        at = (parent & !TOOK) as usize;
    }
    let paths = pairs
        .iter()
        .map(|&(s, t)| {
            let mut path = vec![s];
            let mut prev = usize::MAX;
            let mut cur = s;
            while cur != t {
                let nxt = chosen[cur].iter().copied().find(|&w| w != prev).expect("chosen edges form paths");
                prev = cur;
                cur = nxt;
                path.push(cur);
            }
            path
        })
        .collect();
    Ok(FrontierOutcome::Linked(paths))
}

/// Whether `u` and `v` are open ends of pieces of the same path, so that
/// skipping the edge between them leaves a shortcut unused.
fn wasteful(cells: &[u8], su: usize, sv: usize, tu: Option<u8>, tv: Option<u8>) -> bool {
    match (classify(cells[su], tu), classify(cells[sv], tv)) {
        (Some(End::Terminal(c) | End::Label(c)), Some(End::Terminal(d) | End::Label(d))) => c == d,
        (Some(End::Float(a)), Some(End::Float(b))) => a == b,
        _ => false,
    }
}

/// Retires `dead` slots, drops the leaving vertices from `cells` and
/// records the result.
#[allow(clippy::too_many_arguments)]
fn push(
    index: &mut FxHashMap<State, u32>,
    mut cells: [u8; MAX_FRONTIER],
    mask: u16,
    dead: &[usize],
    keep: &[usize],
    leaving: &[usize],
    slot: &[usize],
    term: &[Option<u8>],
    parent: u32,
    cap: usize,
) -> Result<(), RayError> {
    for &i in dead {
        if cells[i] == FREE {
            cells[i] = DONE;
        }
    }
    for &x in leaving {
        let ok = match cells[slot[x]] {
            FREE => term[x].is_none(),
            DONE => true,
            _ => false,
        };
        if !ok {
            return Ok(());
        }
    }
    let mut out = State { mask, cells: [FREE; MAX_FRONTIER] };
    for (o, &i) in out.cells.iter_mut().zip(keep) {
        *o = cells[i];
    }
    normalize(&mut out.cells[..keep.len()]);
    let len = index.len();
    if let std::collections::hash_map::Entry::Vacant(slot) = index.entry(out) {
        if len >= cap {
            return Err(RayError::SearchCap { cap });
        }
        slot.insert(parent);
    }
    Ok(())
}

/// Applies edge `(u, v)` at frontier slots `su`, `sv`; false if illegal.
fn join(vals: &mut [u8], mask: &mut u16, su: usize, sv: usize, tu: Option<u8>, tv: Option<u8>) -> bool {
    let (Some(a), Some(b)) = (classify(vals[su], tu), classify(vals[sv], tv)) else {
        return false;
    };
    let other_end =
        |vals: &[u8], id: u8, not: usize| (0..vals.len()).find(|&i| i != not && vals[i] == FLOAT + id).unwrap();
    match (a, b) {
        (End::Free, End::Free) => {
            // ids are normalized, so the next one is unused
            let id = vals.iter().filter(|&&x| x >= FLOAT).map(|&x| x - FLOAT + 1).max().unwrap_or(0);
            vals[su] = FLOAT + id;
            vals[sv] = FLOAT + id;
        }
        (End::Free, End::Terminal(c)) | (End::Free, End::Label(c)) => {
            vals[su] = LABEL + c;
            vals[sv] = DONE;
        }
        (End::Terminal(c), End::Free) | (End::Label(c), End::Free) => {
            vals[sv] = LABEL + c;
            vals[su] = DONE;
        }
        (End::Free, End::Float(id)) => {
            vals[su] = FLOAT + id;
            vals[sv] = DONE;
        }
        (End::Float(id), End::Free) => {
            vals[sv] = FLOAT + id;
            vals[su] = DONE;
        }
        (End::Terminal(c) | End::Label(c), End::Terminal(d) | End::Label(d)) => {
            if c != d {
                return false;
            }
            *mask |= 1 << c;
            vals[su] = DONE;
            vals[sv] = DONE;
        }
        (End::Terminal(c) | End::Label(c), End::Float(id)) => {
            let w = other_end(vals, id, sv);
            vals[w] = LABEL + c;
            vals[su] = DONE;
            vals[sv] = DONE;
        }
        (End::Float(id), End::Terminal(c) | End::Label(c)) => {
            let w = other_end(vals, id, su);
            vals[w] = LABEL + c;
            vals[su] = DONE;
            vals[sv] = DONE;
        }
        (End::Float(i1), End::Float(i2)) => {
            if i1 == i2 {
                return false;
            }
            let w2 = other_end(vals, i2, sv);
            vals[w2] = FLOAT + i1;
            vals[su] = DONE;
            vals[sv] = DONE;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paths(g: &Graph, pairs: &[(usize, usize)]) -> FrontierOutcome {
        fixed_pair_paths(g, pairs, &vec![false; g.n()], 1 << 20).unwrap()
    }

    #[test]
    fn parallel_rows_link() {
        let g = Graph::grid(2, 3);
        assert_eq!(paths(&g, &[(0, 2), (3, 5)]), FrontierOutcome::Linked(vec![vec![0, 1, 2], vec![3, 4, 5]]));
    }

    #[test]
    fn crossing_pairs_in_a_ladder_fail() {
        // 2x3 grid: corners 0-5 and 3-2 must cross
        assert_eq!(paths(&Graph::grid(2, 3), &[(0, 5), (3, 2)]), FrontierOutcome::Infeasible);
    }

    #[test]
    fn cycle_two_pairs() {
        // on a 6-cycle, pairs (0,2) and (3,5) are fine; (0,3) and (1,4) interleave
        let g = Graph::cycle(6);
        assert!(matches!(paths(&g, &[(0, 2), (3, 5)]), FrontierOutcome::Linked(_)));
        assert_eq!(paths(&g, &[(0, 3), (1, 4)]), FrontierOutcome::Infeasible);
    }

    #[test]
    fn trivial_and_blocked() {
        let g = Graph::path(4);
        assert_eq!(paths(&g, &[(2, 2), (0, 1)]), FrontierOutcome::Linked(vec![vec![2], vec![0, 1]]));
        assert_eq!(paths(&g, &[(2, 2), (0, 3)]), FrontierOutcome::Infeasible);
        let mut blocked = vec![false; 4];
        blocked[1] = true;
        assert_eq!(fixed_pair_paths(&g, &[(0, 3)], &blocked, 100).unwrap(), FrontierOutcome::Infeasible);
    }

    #[test]
    fn cap_reported() {
        let g = Graph::grid(4, 4);
        assert_eq!(fixed_pair_paths(&g, &[(0, 15), (3, 12)], &[false; 16], 2), Err(RayError::SearchCap { cap: 2 }));
    }
}
