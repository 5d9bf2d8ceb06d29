//! Finitely presented infinite graphs and their finite windows.
//!
//! Every world vertex is a coordinate pair. Grids use `(x, y)`; products use
//! `(v, t)` with `v` a base vertex; the dominated ray uses `(0, t)` for the
//! spine and `(i, -1)` for the `i`-th dominating vertex.

use std::fmt;
use std::str::FromStr;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

pub type Coord = [i64; 2];

/// Default limit on the number of vertices in a window.
pub const DEFAULT_WINDOW_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WorldError {
    #[error("unknown world kind {0:?}")]
    UnknownKind(String),
    #[error("{kind} worlds need a base graph")]
    MissingBase { kind: WorldKind },
    #[error("{kind} worlds take no base graph")]
    UnexpectedBase { kind: WorldKind },
    #[error("product base graph must be non-empty and connected")]
    BadBase,
    #[error("dominated-ray worlds need k >= 1")]
    MissingK,
    #[error("{kind} worlds take no k")]
    UnexpectedK { kind: WorldKind },
    #[error("depth must be at least 1")]
    Depth,
    #[error("window of {size} vertices exceeds the cap of {cap}")]
    WindowCap { size: u128, cap: usize },
    #[error("{kind} world supplies at most {supply} canonical rays, {m} requested")]
    RaySupply { kind: WorldKind, m: usize, supply: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WorldKind {
    #[serde(rename = "full-grid")]
    FullGrid,
    #[serde(rename = "half-grid")]
    HalfGrid,
    #[serde(rename = "hex-half-grid")]
    HexHalfGrid,
    #[serde(rename = "product-Z")]
    ProductZ,
    #[serde(rename = "product-N")]
    ProductN,
    #[serde(rename = "dominated-ray")]
    DominatedRay,
}

impl WorldKind {
    pub const ALL: [WorldKind; 6] = [
        WorldKind::FullGrid,
        WorldKind::HalfGrid,
        WorldKind::HexHalfGrid,
        WorldKind::ProductZ,
        WorldKind::ProductN,
        WorldKind::DominatedRay,
    ];

    pub fn name(self) -> &'static str {
        match self {
            WorldKind::FullGrid => "full-grid",
            WorldKind::HalfGrid => "half-grid",
            WorldKind::HexHalfGrid => "hex-half-grid",
            WorldKind::ProductZ => "product-Z",
            WorldKind::ProductN => "product-N",
            WorldKind::DominatedRay => "dominated-ray",
        }
    }

    fn is_product(self) -> bool {
        matches!(self, WorldKind::ProductZ | WorldKind::ProductN)
    }
}

impl fmt::Display for WorldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for WorldKind {
    type Err = WorldError;

    fn from_str(s: &str) -> Result<Self, WorldError> {
        Self::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| WorldError::UnknownKind(s.into()))
    }
}

/// World descriptor as read from JSON; `depth` is only used by callers that
/// also truncate.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorldSpec {
    pub kind: WorldKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<Graph>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct World {
    kind: WorldKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    base: Option<Graph>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
}

pub fn make_world(kind: WorldKind, base: Option<Graph>, k: Option<usize>) -> Result<World, WorldError> {
    match (kind.is_product(), &base) {
        (true, None) => return Err(WorldError::MissingBase { kind }),
        (true, Some(b)) if b.n() == 0 || !b.is_connected() => return Err(WorldError::BadBase),
        (false, Some(_)) => return Err(WorldError::UnexpectedBase { kind }),
        _ => {}
    }
    match (kind, k) {
        (WorldKind::DominatedRay, None | Some(0)) => return Err(WorldError::MissingK),
        (WorldKind::DominatedRay, _) | (_, None) => {}
        (_, Some(_)) => return Err(WorldError::UnexpectedK { kind }),
    }
    Ok(World { kind, base, k })
}

impl World {
    pub fn from_spec(spec: &WorldSpec) -> Result<World, WorldError> {
        make_world(spec.kind, spec.base.clone(), spec.k)
    }

    pub fn full_grid() -> World {
        make_world(WorldKind::FullGrid, None, None).unwrap()
    }

    pub fn half_grid() -> World {
        make_world(WorldKind::HalfGrid, None, None).unwrap()
    }

    pub fn hex_half_grid() -> World {
        make_world(WorldKind::HexHalfGrid, None, None).unwrap()
    }

    pub fn product_z(base: Graph) -> Result<World, WorldError> {
        make_world(WorldKind::ProductZ, Some(base), None)
    }

    pub fn product_n(base: Graph) -> Result<World, WorldError> {
        make_world(WorldKind::ProductN, Some(base), None)
    }

    pub fn dominated_ray(k: usize) -> Result<World, WorldError> {
        make_world(WorldKind::DominatedRay, None, Some(k))
    }

    /// A locally finite model of `DR_k`: the spine ray `(0, t)` plus, for
    /// each dominating vertex, a ray `(i, t)` joined to the spine at every
    /// height. It is `K_{1,k} □ N` with the star centre as the spine.
    pub fn inflated_dominated_ray(k: usize) -> Result<World, WorldError> {
        if k == 0 {
            return Err(WorldError::MissingK);
        }
        World::product_n(Graph::star(k))
    }

    pub fn kind(&self) -> WorldKind {
        self.kind
    }

    pub fn base(&self) -> Option<&Graph> {
        self.base.as_ref()
    }

    pub fn k(&self) -> Option<usize> {
        self.k
    }

    fn base_n(&self) -> i64 {
        self.base.as_ref().map_or(0, |b| b.n() as i64)
    }

    pub fn contains(&self, c: Coord) -> bool {
        let [x, y] = c;
        match self.kind {
            WorldKind::FullGrid => true,
            WorldKind::HalfGrid | WorldKind::HexHalfGrid => y >= 0,
            WorldKind::ProductZ => (0..self.base_n()).contains(&x),
            WorldKind::ProductN => (0..self.base_n()).contains(&x) && y >= 0,
            WorldKind::DominatedRay => (x == 0 && y >= 0) || (y == -1 && (1..=self.k.unwrap() as i64).contains(&x)),
        }
    }

    /// Smallest window depth containing `c`; dominating vertices lie in
    /// every window.
    pub fn depth_of(&self, c: Coord) -> Option<u64> {
        if !self.contains(c) {
            return None;
        }
        let [x, y] = c;
        Some(match self.kind {
            WorldKind::FullGrid | WorldKind::HalfGrid | WorldKind::HexHalfGrid => {
                x.unsigned_abs().max(y.unsigned_abs())
            }
            WorldKind::ProductZ | WorldKind::ProductN => y.unsigned_abs(),
            WorldKind::DominatedRay => y.max(0) as u64,
        })
    }

    pub fn adjacent(&self, a: Coord, b: Coord) -> bool {
        if !self.contains(a) || !self.contains(b) {
            return false;
        }
        let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
        match self.kind {
            WorldKind::FullGrid | WorldKind::HalfGrid => dx.abs() + dy.abs() == 1,
            WorldKind::HexHalfGrid => {
                // brick wall: the rung above (x, y) exists iff x + y is even
                (dy == 0 && dx.abs() == 1) || (dx == 0 && dy.abs() == 1 && (a[0] + a[1].min(b[1])).rem_euclid(2) == 0)
            }
            WorldKind::ProductZ | WorldKind::ProductN => {
                (dx == 0 && dy.abs() == 1)
                    || (dy == 0 && self.base.as_ref().unwrap().has_edge(a[0] as usize, b[0] as usize))
            }
            WorldKind::DominatedRay => {
                let spine = |c: Coord| c[0] == 0;
                match (spine(a), spine(b)) {
                    (true, true) => dy.abs() == 1,
                    (true, false) | (false, true) => true,
                    (false, false) => false,
                }
            }
        }
    }

    /// All world neighbours of `c`, or `None` for a vertex of infinite degree.
    pub fn neighbours(&self, c: Coord) -> Option<Vec<Coord>> {
        if !self.contains(c) {
            return Some(Vec::new());
        }
        let [x, y] = c;
        let cands: Vec<Coord> = match self.kind {
            WorldKind::ProductZ | WorldKind::ProductN => {
                let base = self.base.as_ref().unwrap();
                let mut v: Vec<Coord> = base.neighbours(x as usize).iter().map(|&u| [u as i64, y]).collect();
                v.extend([[x, y - 1], [x, y + 1]]);
                v
            }
            WorldKind::DominatedRay if x != 0 => return None,
            WorldKind::DominatedRay => {
                let mut v = vec![[0, y - 1], [0, y + 1]];
                v.extend((1..=self.k.unwrap() as i64).map(|i| [i, -1]));
                v
            }
            _ => vec![[x - 1, y], [x + 1, y], [x, y - 1], [x, y + 1]],
        };
        Some(cands.into_iter().filter(|&n| self.adjacent(c, n)).collect())
    }

    pub fn window_size(&self, depth: u64) -> u128 {
        let d = depth as u128;
        let n = self.base_n() as u128;
        match self.kind {
            WorldKind::FullGrid => (2 * d + 1) * (2 * d + 1),
            WorldKind::HalfGrid | WorldKind::HexHalfGrid => (2 * d + 1) * (d + 1),
            WorldKind::ProductZ => n * (2 * d + 1),
            WorldKind::ProductN => n * (d + 1),
            WorldKind::DominatedRay => d + 1 + self.k.unwrap() as u128,
        }
    }

    fn window_coords(&self, depth: u64) -> Vec<Coord> {
        let d = depth as i64;
        let mut out = Vec::new();
        match self.kind {
            WorldKind::FullGrid => {
                for x in -d..=d {
                    out.extend((-d..=d).map(|y| [x, y]));
                }
            }
            WorldKind::HalfGrid | WorldKind::HexHalfGrid => {
                for x in -d..=d {
                    out.extend((0..=d).map(|y| [x, y]));
                }
            }
            WorldKind::ProductZ | WorldKind::ProductN => {
                let lo = if self.kind == WorldKind::ProductZ { -d } else { 0 };
                for v in 0..self.base_n() {
                    out.extend((lo..=d).map(|t| [v, t]));
                }
            }
            WorldKind::DominatedRay => {
                out.extend((0..=d).map(|t| [0, t]));
                out.extend((1..=self.k.unwrap() as i64).map(|i| [i, -1]));
            }
        }
        out
    }

    /// Disjoint rays converging to one end: columns in the half grids, the
    /// four-direction pinwheel in the full grid, `{v} □ N` in products and
    /// the spine in the dominated ray.
    pub fn canonical_rays(&self, m: usize) -> Result<Vec<crate::ray::RaySpec>, WorldError> {
        canonical_rays(self, m)
    }
}

/// See [`World::canonical_rays`].
pub fn canonical_rays(w: &World, m: usize) -> Result<Vec<crate::ray::RaySpec>, WorldError> {
    use crate::ray::RaySpec;
    let supply = match w.kind {
        WorldKind::ProductZ | WorldKind::ProductN => w.base_n() as usize,
        WorldKind::DominatedRay => 1,
        _ => usize::MAX,
    };
    if m == 0 || m > supply {
        return Err(WorldError::RaySupply { kind: w.kind, m, supply: supply.min(1 << 20) });
    }
    let rays = (0..m)
        .map(|j| {
            let i = j as i64;
            let (start, period): (Coord, Vec<Coord>) = match w.kind {
                WorldKind::HalfGrid => ([i, 0], vec![[0, 1]]),
                WorldKind::HexHalfGrid => ([2 * i, 0], vec![[0, 1], [1, 0], [0, 1], [-1, 0]]),
                WorldKind::FullGrid => {
                    let l = i / 4;
                    match j % 4 {
                        0 => ([l, 1], vec![[0, 1]]),
                        1 => ([1, -l], vec![[1, 0]]),
                        2 => ([-l, -1], vec![[0, -1]]),
                        _ => ([-1, l], vec![[-1, 0]]),
                    }
                }
                WorldKind::ProductZ | WorldKind::ProductN => ([i, 0], vec![[0, 1]]),
                WorldKind::DominatedRay => ([0, 0], vec![[0, 1]]),
            };
            RaySpec::new(vec![start], period, j)
        })
        .collect();
    Ok(rays)
}

/// A finite window of a world.
#[derive(Clone, Debug)]
pub struct Truncation {
    world: World,
    depth: u64,
    graph: Graph,
    coords: Vec<Coord>,
    index: FxHashMap<Coord, usize>,
    boundary: Vec<usize>,
}

pub fn truncate(w: &World, depth: u64) -> Result<Truncation, WorldError> {
    truncate_capped(w, depth, DEFAULT_WINDOW_CAP)
}

pub fn truncate_capped(w: &World, depth: u64, cap: usize) -> Result<Truncation, WorldError> {
    if depth == 0 {
        return Err(WorldError::Depth);
    }
    let size = w.window_size(depth);
    if size > cap as u128 {
        return Err(WorldError::WindowCap { size, cap });
    }
    let coords = w.window_coords(depth);
    let index: FxHashMap<Coord, usize> = coords.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut graph = Graph::new(coords.len());
    let mut boundary = Vec::new();
    for (i, &c) in coords.iter().enumerate() {
        match w.neighbours(c) {
            Some(ns) => {
                let mut outside = false;
                for nb in ns {
                    match index.get(&nb) {
                        Some(&j) if i < j => graph.add_edge(i, j).unwrap(),
                        Some(_) => {}
                        None => outside = true,
                    }
                }
                if outside {
                    boundary.push(i);
                }
            }
            None => {
                // a dominating vertex: joined to the whole spine prefix
                for (j, &s) in coords.iter().enumerate() {
                    if s[0] == 0 {
                        graph.add_edge(i.min(j), i.max(j)).ok();
                    }
                }
            }
        }
    }
    Ok(Truncation { world: w.clone(), depth, graph, coords, index, boundary })
}

impl Truncation {
    pub fn world(&self) -> &World {
        &self.world
    }

    pub fn depth(&self) -> u64 {
        self.depth
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn coords(&self) -> &[Coord] {
        &self.coords
    }

    pub fn coord(&self, v: usize) -> Coord {
        self.coords[v]
    }

    pub fn vertex(&self, c: Coord) -> Option<usize> {
        self.index.get(&c).copied()
    }

    pub fn boundary(&self) -> &[usize] {
        &self.boundary
    }

    pub fn vertex_depth(&self, v: usize) -> u64 {
        self.world.depth_of(self.coords[v]).unwrap()
    }

    /// Window vertices within Chebyshev-style `depth <= r` of the world.
    pub fn ball(&self, r: u64) -> Vec<Coord> {
        self.coords.iter().copied().filter(|&c| self.world.depth_of(c).unwrap() <= r).collect()
    }
}

impl Serialize for Truncation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Truncation", 5)?;
        st.serialize_field("world", &self.world)?;
        st.serialize_field("depth", &self.depth)?;
        st.serialize_field("coords", &self.coords)?;
        st.serialize_field("graph", &self.graph)?;
        st.serialize_field("boundary", &self.boundary)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_examples() {
        let t = truncate(&World::full_grid(), 2).unwrap();
        assert_eq!((t.graph().n(), t.graph().edge_count()), (25, 40));
        let t = truncate(&World::half_grid(), 2).unwrap();
        assert_eq!(t.graph().n(), 15);
        let t = truncate(&World::dominated_ray(2).unwrap(), 3).unwrap();
        assert_eq!(t.graph().n(), 6);
        for i in 1..=2 {
            let d = t.vertex([i, -1]).unwrap();
            assert_eq!(t.graph().degree(d), 4);
            assert!(!t.boundary().contains(&d));
        }
        assert_eq!(t.boundary(), &[t.vertex([0, 3]).unwrap()]);
    }

    #[test]
    fn world_validation() {
        assert_eq!(
            make_world(WorldKind::ProductZ, None, None),
            Err(WorldError::MissingBase { kind: WorldKind::ProductZ })
        );
        let two = Graph::new(2);
        assert_eq!(World::product_n(two), Err(WorldError::BadBase));
        assert_eq!(World::dominated_ray(0), Err(WorldError::MissingK));
        assert_eq!(
            make_world(WorldKind::FullGrid, None, Some(2)),
            Err(WorldError::UnexpectedK { kind: WorldKind::FullGrid })
        );
        assert_eq!("product-Z".parse::<WorldKind>().unwrap(), WorldKind::ProductZ);
        assert!("torus".parse::<WorldKind>().is_err());
    }

    #[test]
    fn window_cap() {
        let w = World::full_grid();
        assert_eq!(truncate_capped(&w, 10, 100).unwrap_err(), WorldError::WindowCap { size: 441, cap: 100 });
        assert_eq!(truncate(&w, 0).unwrap_err(), WorldError::Depth);
    }

    #[test]
    fn hex_is_cubic_inside() {
        let t = truncate(&World::hex_half_grid(), 6).unwrap();
        for v in 0..t.graph().n() {
            let [x, y] = t.coord(v);
            if x.abs() < 6 && (1..6).contains(&y) {
                assert_eq!(t.graph().degree(v), 3, "{:?}", t.coord(v));
            }
        }
        assert!(t.graph().is_connected());
    }

    #[test]
    fn product_window() {
        let w = World::product_z(Graph::cycle(3)).unwrap();
        let t = truncate(&w, 2).unwrap();
        // 3 layers of triangles over t = -2..=2
        assert_eq!(t.graph().n(), 15);
        assert_eq!(t.graph().edge_count(), 5 * 3 + 3 * 4);
        assert_eq!(t.boundary().len(), 6);
    }

    #[test]
    fn spec_round_trip() {
        let spec: WorldSpec =
            serde_json::from_str(r#"{"kind":"product-N","base":{"n":2,"edges":[[0,1]]},"depth":3}"#).unwrap();
        let w = World::from_spec(&spec).unwrap();
        assert_eq!(w.kind(), WorldKind::ProductN);
        assert!(serde_json::from_str::<WorldSpec>(r#"{"kind":"half-grid","colour":1}"#).is_err());
    }
}
