use serde::{Deserialize, Serialize};

use super::Graph;

/// A path whose interior vertices all have degree exactly two in the host
/// graph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BarePath(Vec<usize>);

impl BarePath {
    /// Checks the bare-path invariants against `g`.
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Option<Self> {
        let p = Self(vertices);
        p.is_valid_in(g).then_some(p)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.windows(2).map(|w| (w[0], w[1]))
    }

    /// Vertices of `g` not on the path.
    pub fn complement_size(&self, g: &Graph) -> usize {
        g.n() - self.0.len()
    }

    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let vs = &self.0;
        if vs.is_empty() || vs.iter().any(|&v| v >= g.n()) {
            return false;
        }
        let mut seen = vec![false; g.n()];
        for &v in vs {
            if std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        let adjacent = vs.windows(2).all(|w| g.has_edge(w[0], w[1]));
        let interior = vs.len() < 3 || vs[1..vs.len() - 1].iter().all(|&v| g.degree(v) == 2);
        adjacent && interior
    }
}

/// Grows `path` past its last vertex while that vertex has degree two and its
/// other neighbour is not yet on the path.
fn extend(g: &Graph, path: &mut Vec<usize>, on_path: &mut [bool]) {
    loop {
        let end = *path.last().unwrap();
        if g.degree(end) != 2 {
            return;
        }
        let prev = path[path.len() - 2];
        let nbrs = g.neighbours(end);
        let next = if nbrs[0] == prev { nbrs[1] } else { nbrs[0] };
        if on_path[next] {
            return;
        }
        on_path[next] = true;
        path.push(next);
    }
}

/// Every maximal bare path of `g`, each oriented so that its vertex sequence
/// is the lexicographically smaller of the two readings, sorted.
///
/// A maximal bare path is grown from an edge by extending both ends until
/// the end has degree other than two or the next vertex is already used.
pub fn maximal_bare_paths(g: &Graph) -> Vec<BarePath> {
    if g.n() == 1 {
        return vec![BarePath(vec![0])];
    }
    let mut on_path = vec![false; g.n()];
    let mut out: Vec<BarePath> = Vec::new();
    for (u, v) in g.edges() {
        let mut fwd = vec![u, v];
        on_path[u] = true;
        on_path[v] = true;
        extend(g, &mut fwd, &mut on_path);
        let mut back = vec![v, u];
        extend(g, &mut back, &mut on_path);
        for &w in fwd.iter().chain(&back) {
            on_path[w] = false;
        }
        let mut seq: Vec<usize> = back[2..].iter().rev().copied().collect();
        seq.extend(fwd);
        let rev: Vec<usize> = seq.iter().rev().copied().collect();
        out.push(BarePath(seq.min(rev)));
    }
    out.sort();
    out.dedup();
    out
}

/// The lexicographically first maximal bare path missing at most `k`
/// vertices of `g`.
pub fn find_bare_path_cover(g: &Graph, k: usize) -> Option<BarePath> {
    maximal_bare_paths(g).into_iter().find(|p| p.complement_size(g) <= k)
}
