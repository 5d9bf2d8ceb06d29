use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{validate_family, RayError, RaySpec};
use crate::graph::Graph;
use crate::world::{truncate_capped, Truncation, World, DEFAULT_WINDOW_CAP};

/// Depth width of one annulus. Two layers keep the brick-wall half grid
/// connected inside every annulus.
pub const ANNULUS_WIDTH: u64 = 2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RayGraph {
    pub indices: Vec<usize>,
    /// Pairs of ray indices, each sorted, in lexicographic order.
    pub edges: Vec<[usize; 2]>,
    pub stabilized: bool,
    /// Innermost and outermost depth examined.
    pub depth_range: (u64, u64),
}

impl RayGraph {
    /// The ray graph as a finite graph on positions `0..indices.len()`.
    pub fn to_graph(&self) -> Graph {
        let pos = |i: usize| self.indices.iter().position(|&x| x == i).unwrap();
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&[a, b]| (pos(a), pos(b))).collect();
        Graph::from_edges(self.indices.len(), &edges).unwrap()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&[a.min(b), a.max(b)])
    }
}

/// Whether some path inside `region` joins `from` to `to` while avoiding
/// `blocked`.
fn linked(g: &Graph, region: &[bool], blocked: &[bool], from: &[usize], to: &[bool]) -> bool {
    let mut seen = vec![false; g.n()];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &v in from {
        seen[v] = true;
        queue.push_back(v);
    }
    while let Some(v) = queue.pop_front() {
        if to[v] {
            return true;
        }
        for &w in g.neighbours(v) {
            if region[w] && !blocked[w] && !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    false
}

fn edges_beyond(
    t: &Truncation,
    family: &[Vec<(usize, usize)>],
    rays: &[RaySpec],
    d0: u64,
    annuli: usize,
) -> Vec<[usize; 2]> {
    let g = t.graph();
    let n = g.n();
    let mut owner = vec![usize::MAX; n];
    for (i, pos) in family.iter().enumerate() {
        for &(_, v) in pos {
            owner[v] = i;
        }
    }
    let depth: Vec<u64> = (0..n).map(|v| t.vertex_depth(v)).collect();
    let regions: Vec<Vec<bool>> = (0..annuli as u64)
        .map(|a| {
            let (lo, hi) = (d0 + a * ANNULUS_WIDTH, d0 + (a + 1) * ANNULUS_WIDTH);
            depth.iter().map(|&d| d > lo && d <= hi).collect()
        })
        .collect();
    let m = rays.len();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    let adjacent = |&(i, j): &(usize, usize)| -> bool {
        let blocked: Vec<bool> = owner.iter().map(|&o| o != usize::MAX && o != i && o != j).collect();
        regions.iter().all(|region| {
            let from: Vec<usize> = family[i].iter().map(|&(_, v)| v).filter(|&v| region[v]).collect();
            let to: Vec<bool> = (0..n).map(|v| owner[v] == j && region[v]).collect();
            linked(g, region, &blocked, &from, &to)
        })
    };
    #[cfg(feature = "parallel")]
    let flags: Vec<bool> = {
        use rayon::prelude::*;
        pairs.par_iter().map(adjacent).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let flags: Vec<bool> = pairs.iter().map(adjacent).collect();
    let mut edges: Vec<[usize; 2]> = pairs
        .iter()
        .zip(flags)
        .filter(|(_, f)| *f)
        .map(|(&(i, j), _)| {
            let (a, b) = (rays[i].index(), rays[j].index());
            [a.min(b), a.max(b)]
        })
        .collect();
    edges.sort_unstable();
    edges
}

/// Edge `(i, j)` is present when each of `annuli` consecutive annuli beyond
/// depth `d0` contains an `R_i`–`R_j` path avoiding every other ray; the
/// graph is stabilized when starting from `d0 + 1` gives the same edges.
pub fn ray_graph(w: &World, rays: &[RaySpec], d0: u64, annuli: usize) -> Result<RayGraph, RayError> {
    ray_graph_capped(w, rays, d0, annuli, DEFAULT_WINDOW_CAP)
}

pub fn ray_graph_capped(
    w: &World,
    rays: &[RaySpec],
    d0: u64,
    annuli: usize,
    window_cap: usize,
) -> Result<RayGraph, RayError> {
    if annuli < 3 {
        return Err(RayError::TooFewAnnuli(annuli));
    }
    let outer = d0 + 1 + annuli as u64 * ANNULUS_WIDTH;
    let t = truncate_capped(w, outer, window_cap)?;
    let family = validate_family(&t, rays)?;
    let edges = edges_beyond(&t, &family, rays, d0, annuli);
    let again = edges_beyond(&t, &family, rays, d0 + 1, annuli);
    Ok(RayGraph {
        indices: rays.iter().map(RaySpec::index).collect(),
        stabilized: edges == again,
        edges,
        depth_range: (d0, outer),
    })
}

/// Whether a stabilized ray graph is a path on its indices.
pub fn is_linear_family(rg: &RayGraph) -> Result<bool, RayError> {
    if !rg.stabilized {
        return Err(RayError::Unstabilized);
    }
    Ok(rg.to_graph().is_path())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_grid_columns_form_a_path() {
        let w = World::half_grid();
        let rg = ray_graph(&w, &w.canonical_rays(3).unwrap(), 6, 3).unwrap();
        assert_eq!(rg.edges, vec![[0, 1], [1, 2]]);
        assert!(rg.stabilized);
        assert!(is_linear_family(&rg).unwrap());
    }

    #[test]
    fn full_grid_pinwheel_is_a_cycle() {
        let w = World::full_grid();
        let rg = ray_graph(&w, &w.canonical_rays(4).unwrap(), 10, 3).unwrap();
        assert_eq!(rg.edges, vec![[0, 1], [0, 3], [1, 2], [2, 3]]);
        assert!(!is_linear_family(&rg).unwrap());
    }

    #[test]
    fn triangle_product() {
        let w = World::product_z(Graph::cycle(3)).unwrap();
        let rg = ray_graph(&w, &w.canonical_rays(3).unwrap(), 4, 3).unwrap();
        assert_eq!(rg.edges, vec![[0, 1], [0, 2], [1, 2]]);
    }

    #[test]
    fn linearity_examples() {
        let mk = |edges: Vec<[usize; 2]>, stabilized| RayGraph {
            indices: vec![0, 1, 2],
            edges,
            stabilized,
            depth_range: (0, 1),
        };
        assert!(is_linear_family(&mk(vec![[0, 1], [1, 2]], true)).unwrap());
        assert!(!is_linear_family(&mk(vec![[0, 1], [0, 2], [1, 2]], true)).unwrap());
        assert_eq!(is_linear_family(&mk(vec![], false)), Err(RayError::Unstabilized));
    }

    #[test]
    fn annuli_checked() {
        let w = World::half_grid();
        assert_eq!(ray_graph(&w, &w.canonical_rays(2).unwrap(), 4, 2), Err(RayError::TooFewAnnuli(2)));
    }
}
