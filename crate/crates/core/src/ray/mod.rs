//! Rays in worlds, ray graphs, tails and linkages between ray families.

mod check;
mod frontier;
mod graph;
mod linkage;
mod transition;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::GraphError;
use crate::world::{Coord, Truncation, World, WorldError};

pub use check::{check_linkage, LinkageViolation};
pub use frontier::{fixed_pair_paths, fixed_pair_paths_ordered, FrontierOutcome};
pub use graph::{is_linear_family, ray_graph, ray_graph_capped, RayGraph, ANNULUS_WIDTH};
pub use linkage::{find_linkage, find_linkage_with, LinkOptions, LinkPath, Linkage, DEFAULT_SEARCH_CAP};
pub use transition::realize_transition;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RayError {
    #[error("ray {index}: {msg}")]
    InvalidRay { index: usize, msg: String },
    #[error("rays {0} and {1} share a vertex")]
    NotDisjoint(usize, usize),
    #[error("need at least 3 annuli, got {0}")]
    TooFewAnnuli(usize),
    #[error("ray graph is not stabilized")]
    Unstabilized,
    #[error("invalid mapping: {0}")]
    BadSigma(String),
    #[error("source family has {r} rays but the target family only {s}")]
    FamilySize { r: usize, s: usize },
    #[error("coordinate {0:?} is outside the window")]
    OutsideWindow(Coord),
    #[error("invalid move sequence: {0}")]
    BadMoves(String),
    #[error("no linkage within depth {depth}: {reason}")]
    NoLinkage { depth: u64, reason: String },
    #[error("disjoint-path search exceeded {cap} states")]
    SearchCap { cap: usize },
    #[error("no sweep of the window keeps the search frontier under {max} vertices (best {width})")]
    FrontierWidth { width: usize, max: usize },
    #[error(transparent)]
    World(#[from] WorldError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// An eventually periodic ray: the `prefix` coordinates, then forever the
/// `period` steps in turn starting from the last prefix coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RaySpecJson", into = "RaySpecJson")]
pub struct RaySpec {
    prefix: Vec<Coord>,
    period: Vec<Coord>,
    index: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Period {
    One(Coord),
    Many(Vec<Coord>),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RaySpecJson {
    prefix: Vec<Coord>,
    period: Period,
    #[serde(default)]
    index: usize,
}

impl TryFrom<RaySpecJson> for RaySpec {
    type Error = String;

    fn try_from(j: RaySpecJson) -> Result<Self, String> {
        let period = match j.period {
            Period::One(s) => vec![s],
            Period::Many(v) => v,
        };
        if j.prefix.is_empty() {
            return Err("prefix must be non-empty".into());
        }
        if period.is_empty() {
            return Err("period must be non-empty".into());
        }
        Ok(RaySpec { prefix: j.prefix, period, index: j.index })
    }
}

impl From<RaySpec> for RaySpecJson {
    fn from(r: RaySpec) -> Self {
        let period = if r.period.len() == 1 { Period::One(r.period[0]) } else { Period::Many(r.period) };
        RaySpecJson { prefix: r.prefix, period, index: r.index }
    }
}

fn add(a: Coord, b: Coord) -> Coord {
    [a[0] + b[0], a[1] + b[1]]
}

fn norm(c: Coord) -> u64 {
    c[0].unsigned_abs().max(c[1].unsigned_abs())
}

impl RaySpec {
    /// Panics on an empty prefix or period.
    pub fn new(prefix: Vec<Coord>, period: Vec<Coord>, index: usize) -> Self {
        assert!(!prefix.is_empty() && !period.is_empty(), "ray needs a prefix and a period");
        Self { prefix, period, index }
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn with_index(mut self, index: usize) -> Self {
        self.index = index;
        self
    }

    pub fn prefix(&self) -> &[Coord] {
        &self.prefix
    }

    pub fn period(&self) -> &[Coord] {
        &self.period
    }

    /// Net displacement of one period.
    pub fn drift(&self) -> Coord {
        self.period.iter().fold([0, 0], |a, &s| add(a, s))
    }

    pub fn start(&self) -> Coord {
        self.prefix[0]
    }

    /// Coordinate at position `p` (the start is position 0).
    pub fn coord(&self, p: usize) -> Coord {
        let l = self.prefix.len();
        if p < l {
            return self.prefix[p];
        }
        let steps = p - (l - 1);
        let q = self.period.len();
        let d = self.drift();
        let whole = (steps / q) as i64;
        let mut c = add(self.prefix[l - 1], [d[0] * whole, d[1] * whole]);
        for s in &self.period[..steps % q] {
            c = add(c, *s);
        }
        c
    }

    pub fn coords(&self) -> impl Iterator<Item = Coord> + '_ {
        (0..).map(|p| self.coord(p))
    }

    /// A position bound past which every coordinate has world depth above
    /// `d`, assuming the drift points away from the origin.
    fn horizon(&self, d: u64) -> usize {
        let reach = self.prefix.iter().map(|&c| norm(c)).max().unwrap();
        let q = self.period.len();
        let span: u64 = self.period.iter().map(|&s| norm(s)).sum();
        self.prefix.len() + q * (d + reach + span + 2) as usize
    }

    /// Smallest position `e` such that every position `>= e` lies deeper
    /// than `d`.
    pub fn escape(&self, w: &World, d: u64) -> usize {
        let h = self.horizon(d);
        (0..h).rev().find(|&p| w.depth_of(self.coord(p)).is_some_and(|x| x <= d)).map_or(0, |p| p + 1)
    }

    /// `(position, window vertex)` for every position before the ray leaves
    /// the window for good.
    pub fn window_positions(&self, t: &Truncation) -> Vec<(usize, usize)> {
        (0..self.escape(t.world(), t.depth())).filter_map(|p| t.vertex(self.coord(p)).map(|v| (p, v))).collect()
    }

    /// The ray starting at position `s`.
    pub fn skip(&self, s: usize) -> RaySpec {
        let l = self.prefix.len();
        if s < l {
            return RaySpec { prefix: self.prefix[s..].to_vec(), period: self.period.clone(), index: self.index };
        }
        let q = self.period.len();
        let r = (s - (l - 1)) % q;
        let mut period = self.period[r..].to_vec();
        period.extend_from_slice(&self.period[..r]);
        RaySpec { prefix: vec![self.coord(s)], period, index: self.index }
    }

    /// Checks adjacency, membership and injectivity over a horizon long
    /// enough to cover every coordinate of depth at most `depth`. A nonzero
    /// drift that stays inside the world carries the ray off to infinity.
    pub fn validate(&self, w: &World, depth: u64) -> Result<(), RayError> {
        let bad = |msg: String| RayError::InvalidRay { index: self.index, msg };
        let d = self.drift();
        if d == [0, 0] {
            return Err(bad("period has zero drift".into()));
        }
        let h = self.horizon(depth) + 2 * self.period.len();
        let mut seen = rustc_hash::FxHashSet::default();
        let mut prev: Option<Coord> = None;
        for p in 0..h {
            let c = self.coord(p);
            if !w.contains(c) {
                return Err(bad(format!("position {p} at {c:?} is not a world vertex")));
            }
            if let Some(a) = prev {
                if !w.adjacent(a, c) {
                    return Err(bad(format!("positions {} and {p} are not adjacent", p - 1)));
                }
            }
            if !seen.insert(c) {
                return Err(bad(format!("revisits {c:?} at position {p}")));
            }
            prev = Some(c);
        }
        Ok(())
    }
}

/// The tail of `r` after its last vertex in `x`; `r` itself when they do not
/// meet.
pub fn tail_after(r: &RaySpec, x: &[Coord], t: &Truncation) -> RaySpec {
    let set: rustc_hash::FxHashSet<Coord> = x.iter().copied().collect();
    let last = (0..r.escape(t.world(), t.depth())).rev().find(|&p| set.contains(&r.coord(p)));
    match last {
        Some(p) => r.skip(p + 1),
        None => r.clone(),
    }
}

/// Checks each ray and that no two share a window vertex.
pub(crate) fn validate_family(t: &Truncation, rays: &[RaySpec]) -> Result<Vec<Vec<(usize, usize)>>, RayError> {
    let mut owner = vec![usize::MAX; t.graph().n()];
    let mut out = Vec::with_capacity(rays.len());
    for (i, r) in rays.iter().enumerate() {
        r.validate(t.world(), t.depth())?;
        let pos = r.window_positions(t);
        for &(_, v) in &pos {
            if owner[v] != usize::MAX {
                return Err(RayError::NotDisjoint(rays[owner[v]].index, r.index));
            }
            owner[v] = i;
        }
        out.push(pos);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::world::truncate;

    fn column(x: i64) -> RaySpec {
        RaySpec::new(vec![[x, 0]], vec![[0, 1]], x as usize)
    }

    #[test]
    fn coordinates_follow_the_period() {
        let r = RaySpec::new(vec![[0, 0], [1, 0]], vec![[0, 1], [1, 0]], 0);
        let got: Vec<Coord> = r.coords().take(6).collect();
        assert_eq!(got, vec![[0, 0], [1, 0], [1, 1], [2, 1], [2, 2], [3, 2]]);
        assert_eq!(r.skip(3).coords().take(3).collect::<Vec<_>>(), vec![[2, 1], [2, 2], [3, 2]]);
        assert_eq!(r.skip(1).coords().take(3).collect::<Vec<_>>(), vec![[1, 0], [1, 1], [2, 1]]);
    }

    #[test]
    fn tails() {
        let t = truncate(&World::half_grid(), 10).unwrap();
        let r = column(0);
        assert_eq!(tail_after(&r, &[], &t), r);
        assert_eq!(tail_after(&r, &[[0, 0], [0, 1], [0, 2]], &t).start(), [0, 3]);
        assert_eq!(tail_after(&r, &[[0, 1], [0, 5], [3, 3]], &t).start(), [0, 6]);
    }

    #[test]
    fn validation() {
        let w = World::half_grid();
        assert!(column(2).validate(&w, 5).is_ok());
        let down = RaySpec::new(vec![[0, 3]], vec![[0, -1]], 0);
        assert!(down.validate(&w, 5).is_err());
        let jump = RaySpec::new(vec![[0, 0], [2, 0]], vec![[0, 1]], 0);
        assert!(jump.validate(&w, 5).is_err());
        let hex = World::hex_half_grid();
        assert!(column(0).validate(&hex, 5).is_err());
        for r in hex.canonical_rays(3).unwrap() {
            r.validate(&hex, 8).unwrap();
        }
    }

    #[test]
    fn escape_positions() {
        let w = World::full_grid();
        let r = RaySpec::new(vec![[3, -5]], vec![[0, 1]], 0);
        // climbs through depth 5..3 and back out
        assert_eq!(r.escape(&w, 4), 10);
        assert_eq!(r.escape(&w, 2), 0);
    }

    #[test]
    fn json_forms() {
        let r: RaySpec = serde_json::from_str(r#"{"prefix":[[0,0]],"period":[0,1],"index":2}"#).unwrap();
        assert_eq!(r, RaySpec::new(vec![[0, 0]], vec![[0, 1]], 2));
        assert_eq!(serde_json::to_string(&r).unwrap(), r#"{"prefix":[[0,0]],"period":[0,1],"index":2}"#);
        let r: RaySpec = serde_json::from_str(r#"{"prefix":[[0,0]],"period":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(r.period().len(), 2);
        assert!(serde_json::from_str::<RaySpec>(r#"{"prefix":[],"period":[0,1]}"#).is_err());
    }

    #[test]
    fn family_overlap_detected() {
        let t = truncate(&World::half_grid(), 5).unwrap();
        let bent = RaySpec::new(vec![[1, 0], [1, 1], [0, 1]], vec![[-1, 0]], 1);
        assert!(validate_family(&t, &[column(0), bent]).is_err());
    }
}
