//! Linkages from one ray family to another after a finite vertex set,
//! searched inside a finite window.
//!
//! Walk `i` is forced to follow `R_i` up to its last vertex in `X` (or just
//! its start); from there it needs a path inside the window to the exit
//! vertex of its target ray, the last window vertex before that ray leaves
//! for good. The walks are vertex-disjoint exactly when these window paths
//! are, so the problem becomes disjoint paths with given terminals.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::frontier::{fixed_pair_paths_ordered, FrontierOutcome};
use super::{validate_family, RayError, RaySpec};
use crate::graph::max_disjoint_paths;
use crate::world::{Coord, Truncation};

/// Default bound on frontier states per edge step in the exact search.
pub const DEFAULT_SEARCH_CAP: usize = 4_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkPath {
    /// Position of the source ray in `R`.
    pub source: usize,
    /// Position of the target ray in `S`.
    pub target: usize,
    /// Ray position of `x'` on the source ray.
    pub x_prime: usize,
    /// Ray position of `y` on the target ray.
    pub y: usize,
    /// From `x'` to `y`; a single vertex when the walk never leaves its ray.
    pub path: Vec<Coord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Linkage {
    /// `sigma[i]` is the position in `S` that source `i` is routed to.
    pub sigma: Vec<usize>,
    pub paths: Vec<LinkPath>,
    pub after: Vec<Coord>,
    /// Depth of the window the linkage was found in.
    pub depth: u64,
}

#[derive(Clone, Copy, Debug)]
pub struct LinkOptions {
    pub search_cap: usize,
    /// Whether the sequential-routing heuristic runs before the exact search.
    pub heuristic: bool,
}

impl Default for LinkOptions {
    fn default() -> Self {
        Self { search_cap: DEFAULT_SEARCH_CAP, heuristic: true }
    }
}

pub fn find_linkage(
    t: &Truncation,
    r: &[RaySpec],
    s: &[RaySpec],
    x: &[Coord],
    sigma: Option<&[usize]>,
) -> Result<Linkage, RayError> {
    find_linkage_with(t, r, s, x, sigma, LinkOptions::default())
}

struct Terminals {
    /// Position on `R_i` where the free part of walk `i` starts.
    start_pos: Vec<usize>,
    sources: Vec<usize>,
    /// Exit position and vertex of each `S_j`.
    exit_pos: Vec<usize>,
    sinks: Vec<usize>,
    blocked: Vec<bool>,
}

fn terminals(t: &Truncation, r: &[RaySpec], s: &[RaySpec], xset: &[bool]) -> Result<Terminals, RayError> {
    let depth = t.depth();
    let no = |reason: String| RayError::NoLinkage { depth, reason };
    let mut blocked = xset.to_vec();
    let mut start_pos = Vec::new();
    let mut sources = Vec::new();
    for ri in r {
        let esc = ri.escape(t.world(), depth);
        let hit = (0..esc).rev().find(|&p| t.vertex(ri.coord(p)).is_some_and(|v| xset[v])).unwrap_or(0);
        for p in 0..=hit {
            let c = ri.coord(p);
            let v = t.vertex(c).ok_or(RayError::OutsideWindow(c))?;
            if p < hit {
                blocked[v] = true;
            }
        }
        start_pos.push(hit);
        sources.push(t.vertex(ri.coord(hit)).unwrap());
    }
    for (i, &v) in sources.iter().enumerate() {
        blocked[v] = false;
        if sources[..i].contains(&v) {
            return Err(no("two walks start at the same vertex".into()));
        }
    }
    let mut exit_pos = Vec::new();
    let mut sinks = Vec::new();
    for sj in s {
        let esc = sj.escape(t.world(), depth);
        if esc == 0 {
            return Err(RayError::OutsideWindow(sj.start()));
        }
        let v = t.vertex(sj.coord(esc - 1)).unwrap();
        exit_pos.push(esc - 1);
        sinks.push(v);
    }
    Ok(Terminals { start_pos, sources, exit_pos, sinks, blocked })
}

/// Shortest path from `a` to `b` avoiding `blocked`, ties broken by vertex
/// order.
fn bfs_path(t: &Truncation, a: usize, b: usize, blocked: &[bool]) -> Option<Vec<usize>> {
    let g = t.graph();
    let mut pred = vec![usize::MAX; g.n()];
    pred[a] = a;
    let mut queue = VecDeque::from([a]);
    while let Some(v) = queue.pop_front() {
        if v == b {
            let mut path = vec![b];
            let mut x = b;
            while x != a {
                x = pred[x];
                path.push(x);
            }
            path.reverse();
            return Some(path);
        }
        for &w in g.neighbours(v) {
            if !blocked[w] && pred[w] == usize::MAX {
                pred[w] = v;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Routes pairs one at a time along shortest paths, trying every order of
/// the pairs (at most 720).
fn sequential_routing(t: &Truncation, pairs: &[(usize, usize)], blocked: &[bool]) -> Option<Vec<Vec<usize>>> {
    let k = pairs.len();
    let mut order: Vec<usize> = (0..k).collect();
    for _ in 0..720 {
        let mut used = blocked.to_vec();
        for &(a, b) in pairs {
            used[a] = true;
            used[b] = true;
        }
        let mut out = vec![Vec::new(); k];
        let ok = order.iter().all(|&c| {
            let (a, b) = pairs[c];
            used[a] = false;
            used[b] = false;
            match bfs_path(t, a, b, &used) {
                Some(p) => {
                    for &v in &p {
                        used[v] = true;
                    }
                    out[c] = p;
                    true
                }
                None => false,
            }
        });
        if ok {
            return Some(out);
        }
        if !next_permutation(&mut order) {
            break;
        }
    }
    None
}

/// Column-major and row-major sweeps of the window; on grid-like worlds one
/// of them is a narrow path decomposition.
fn sweeps(t: &Truncation) -> Vec<Vec<usize>> {
    let mut cols: Vec<usize> = (0..t.graph().n()).collect();
    cols.sort_by_key(|&v| t.coord(v));
    let mut rows = cols.clone();
    rows.sort_by_key(|&v| {
        let [x, y] = t.coord(v);
        (y, x)
    });
    vec![cols, rows]
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Splits the window path `q` of walk `i` into its `R_i` run, the linking
/// path and its `S_j` run.
#[allow(clippy::too_many_arguments)]
fn to_link_path(
    t: &Truncation,
    ri: &RaySpec,
    sj: &RaySpec,
    start: usize,
    exit: usize,
    q: &[usize],
    i: usize,
    j: usize,
) -> LinkPath {
    let last = q.len() - 1;
    let on_s = |b: usize| exit + b >= last && t.vertex(sj.coord(exit + b - last)) == Some(q[b]);
    let y_idx = (0..=last).rev().take_while(|&b| on_s(b)).last().unwrap_or(last);
    let on_r = |b: usize| t.vertex(ri.coord(start + b)) == Some(q[b]);
    let x_idx = (0..=y_idx).take_while(|&b| on_r(b)).last().unwrap_or(0);
    LinkPath {
        source: i,
        target: j,
        x_prime: start + x_idx,
        y: exit - (last - y_idx),
        path: q[x_idx..=y_idx].iter().map(|&v| t.coord(v)).collect(),
    }
}

pub fn find_linkage_with(
    t: &Truncation,
    r: &[RaySpec],
    s: &[RaySpec],
    x: &[Coord],
    sigma: Option<&[usize]>,
    opts: LinkOptions,
) -> Result<Linkage, RayError> {
    if r.len() > s.len() {
        return Err(RayError::FamilySize { r: r.len(), s: s.len() });
    }
    validate_family(t, r)?;
    validate_family(t, s)?;
    let depth = t.depth();
    let n = t.graph().n();
    let mut xset = vec![false; n];
    for &c in x {
        xset[t.vertex(c).ok_or(RayError::OutsideWindow(c))?] = true;
    }
    if let Some(sig) = sigma {
        if sig.len() != r.len() {
            return Err(RayError::BadSigma(format!("expected {} images, got {}", r.len(), sig.len())));
        }
        for (i, &j) in sig.iter().enumerate() {
            if j >= s.len() || sig[..i].contains(&j) {
                return Err(RayError::BadSigma(format!("{sig:?} is not an injection into 0..{}", s.len())));
            }
        }
    }
    let term = terminals(t, r, s, &xset)?;
    let no = |reason: &str| RayError::NoLinkage { depth, reason: reason.into() };

    let (routes, targets): (Vec<Vec<usize>>, Vec<usize>) = match sigma {
        None => {
            let sinks: Vec<usize> = term.sinks.iter().copied().filter(|&v| !term.blocked[v]).collect();
            if term.sources.iter().any(|v| sinks.contains(v)) {
                return Err(no("a walk would start on the exit of a target ray"));
            }
            let forbidden: Vec<usize> = (0..n).filter(|&v| term.blocked[v]).collect();
            let flow = max_disjoint_paths(t.graph(), &term.sources, &sinks, &forbidden)?;
            if flow.count < r.len() {
                return Err(no(&format!("only {} of {} disjoint walks fit", flow.count, r.len())));
            }
            let mut routes = vec![Vec::new(); r.len()];
            let mut targets = vec![0; r.len()];
            for p in flow.paths {
                let i = term.sources.iter().position(|&v| v == p[0]).unwrap();
                targets[i] = term.sinks.iter().position(|&v| v == *p.last().unwrap()).unwrap();
                routes[i] = p;
            }
            (routes, targets)
        }
        Some(sig) => {
            let pairs: Vec<(usize, usize)> =
                sig.iter().enumerate().map(|(i, &j)| (term.sources[i], term.sinks[j])).collect();
            if pairs.iter().any(|&(_, b)| term.blocked[b]) {
                return Err(no("a target ray's exit lies in X or on a forced prefix"));
            }
            let found = if opts.heuristic { sequential_routing(t, &pairs, &term.blocked) } else { None };
            let routes = match found {
                Some(p) => p,
                None => {
                    match fixed_pair_paths_ordered(t.graph(), &pairs, &term.blocked, opts.search_cap, &sweeps(t))? {
                        FrontierOutcome::Linked(p) => p,
                        FrontierOutcome::Infeasible => {
                            return Err(no("exhaustive search found no disjoint walks inducing sigma"));
                        }
                    }
                }
            };
            (routes, sig.to_vec())
        }
    };

    let paths = routes
        .iter()
        .enumerate()
        .map(|(i, q)| {
            let j = targets[i];
            to_link_path(t, &r[i], &s[j], term.start_pos[i], term.exit_pos[j], q, i, j)
        })
        .collect();
    let mut after = x.to_vec();
    after.sort_unstable();
    after.dedup();
    Ok(Linkage { sigma: targets, paths, after, depth })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::world::{truncate, World};

    fn columns(xs: &[i64]) -> Vec<RaySpec> {
        xs.iter().enumerate().map(|(i, &x)| RaySpec::new(vec![[x, 0]], vec![[0, 1]], i)).collect()
    }

    #[test]
    fn identity_on_own_rays_is_empty() {
        let t = truncate(&World::half_grid(), 6).unwrap();
        let r = columns(&[0, 1]);
        let l = find_linkage(&t, &r, &r, &[], Some(&[0, 1])).unwrap();
        for p in &l.paths {
            assert_eq!(p.path.len(), 1);
            assert_eq!(p.x_prime, 0);
            assert_eq!(p.y, 0);
        }
    }

    #[test]
    fn order_reversal_is_infeasible() {
        let t = truncate(&World::half_grid(), 6).unwrap();
        let err = find_linkage(&t, &columns(&[0, 1, 2]), &columns(&[3, 4, 5]), &[], Some(&[2, 1, 0])).unwrap_err();
        assert!(matches!(err, RayError::NoLinkage { depth: 6, .. }));
        assert!(find_linkage(&t, &columns(&[0, 1, 2]), &columns(&[3, 4, 5]), &[], Some(&[0, 1, 2])).is_ok());
    }

    #[test]
    fn flow_without_sigma() {
        let t = truncate(&World::half_grid(), 6).unwrap();
        let l = find_linkage(&t, &columns(&[0, 1]), &columns(&[3, 4, 5]), &[[0, 2], [1, 1]], None).unwrap();
        assert_eq!(l.sigma.len(), 2);
        assert!(l.paths[0].x_prime >= 2 && l.paths[1].x_prime >= 1);
    }

    #[test]
    fn bad_inputs() {
        let t = truncate(&World::half_grid(), 6).unwrap();
        let r = columns(&[0, 1]);
        assert_eq!(find_linkage(&t, &r, &r[..1], &[], None).unwrap_err(), RayError::FamilySize { r: 2, s: 1 });
        assert!(matches!(find_linkage(&t, &r, &r, &[], Some(&[0, 0])), Err(RayError::BadSigma(_))));
        assert_eq!(find_linkage(&t, &r, &r, &[[40, 0]], None).unwrap_err(), RayError::OutsideWindow([40, 0]));
    }

    #[test]
    fn permutations_step() {
        let mut p = vec![0, 1, 2];
        let mut seen = vec![p.clone()];
        while next_permutation(&mut p) {
            seen.push(p.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[5], vec![2, 1, 0]);
    }
}
