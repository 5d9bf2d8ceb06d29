//! Finite simple undirected graphs with stable vertex indexing.
//!
//! Vertices are `0..n`. Adjacency lists are kept sorted so that every
//! traversal in the crate is deterministic.

mod bare;
mod enumerate;
mod flow;
mod parse;

use std::collections::VecDeque;

pub use bare::{find_bare_path_cover, maximal_bare_paths, BarePath};
pub(crate) use enumerate::mask_is_connected;
pub use enumerate::{edge_slot_count, enumerate_connected_graphs, graph_from_mask, ConnectedGraphs};
pub use flow::{max_disjoint_paths, DisjointPaths};
pub use parse::{parse_graph, GraphFormat, GraphJson};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{field}: {msg}")]
    Field { field: String, msg: String },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex sets must be pairwise disjoint (vertex {0} appears twice)")]
    OverlappingSets(usize),
    #[error("enumeration supports 1 <= n <= 8, got {0}")]
    EnumerationRange(usize),
}

/// A finite simple undirected graph.
///
/// Equality ignores display labels.
#[derive(Clone, Debug, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
    labels: Option<Vec<String>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Self { adj: vec![Vec::new(); n], edge_count: 0, labels: None }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(GraphError::DuplicateEdge(u, v)),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.edge_count += 1;
                Ok(())
            }
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        debug_assert_eq!(labels.len(), self.n());
        self.labels = Some(labels);
        self
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display label of `v`, falling back to its index.
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Self {
        let mut g = self.clone();
        if let Ok(p) = g.adj[u].binary_search(&v) {
            g.adj[u].remove(p);
            let q = g.adj[v].binary_search(&u).unwrap();
            g.adj[v].remove(q);
            g.edge_count -= 1;
        }
        g
    }

    /// Subgraph induced on `keep` (in the given order). Returns the subgraph
    /// and, for every old vertex, its new index if kept.
    pub fn induced_subgraph(&self, keep: &[usize]) -> (Graph, Vec<Option<usize>>) {
        let mut map = vec![None; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            map[v] = Some(i);
        }
        let mut h = Graph::new(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            for &w in &self.adj[v] {
                if let Some(j) = map[w] {
                    if i < j {
                        h.add_edge(i, j).expect("induced subgraph of a simple graph is simple");
                    }
                }
            }
        }
        (h, map)
    }

    /// Component id per vertex and the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let n = self.n();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    pub fn component_count(&self) -> usize {
        self.components().1
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Connected, at least three vertices, every degree exactly two.
    pub fn is_cycle(&self) -> bool {
        self.n() >= 3 && self.adj.iter().all(|a| a.len() == 2) && self.is_connected()
    }

    /// Connected with `n - 1` edges and maximum degree at most two.
    pub fn is_path(&self) -> bool {
        let n = self.n();
        n >= 1 && self.edge_count + 1 == n && self.adj.iter().all(|a| a.len() <= 2) && self.is_connected()
    }

    /// Edges whose removal increases the number of components, as `(u, v)`
    /// with `u < v` in lexicographic order.
    pub fn bridges(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut out = Vec::new();
        let mut time = 0;
        // (vertex, parent, next neighbour position)
        let mut stack: Vec<(usize, usize, usize)> = Vec::new();
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            stack.push((root, usize::MAX, 0));
            while let Some(&mut (v, parent, ref mut pos)) = stack.last_mut() {
                if *pos < self.adj[v].len() {
                    let w = self.adj[v][*pos];
                    *pos += 1;
                    if w == parent {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        stack.push((w, v, 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if parent != usize::MAX {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] > disc[parent] {
                            out.push((parent.min(v), parent.max(v)));
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_bridge(&self, u: usize, v: usize) -> bool {
        let key = (u.min(v), u.max(v));
        self.bridges().binary_search(&key).is_ok()
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges).unwrap()
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((0, n - 1));
        Self::from_edges(n, &edges).unwrap()
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    /// Star with centre 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Self::from_edges(leaves + 1, &edges).unwrap()
    }

    /// `rows x cols` grid, vertex `r * cols + c`.
    pub fn grid(rows: usize, cols: usize) -> Self {
        let mut g = Self::new(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    g.add_edge(v, v + 1).unwrap();
                }
                if r + 1 < rows {
                    g.add_edge(v, v + cols).unwrap();
                }
            }
        }
        g
    }
}
