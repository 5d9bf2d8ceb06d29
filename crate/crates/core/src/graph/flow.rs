//! Vertex-disjoint A–B paths via vertex splitting and unit-capacity
//! augmenting paths.

use std::collections::VecDeque;

use serde::Serialize;

use super::{Graph, GraphError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DisjointPaths {
    pub count: usize,
    /// One path per unit of flow. Each path starts in `A`, ends in `B` and
    /// meets `A` and `B` only at its ends.
    pub paths: Vec<Vec<usize>>,
    /// A minimum `A`–`B` vertex separator in `g - forbidden`.
    pub separator: Vec<usize>,
}

const INF: u32 = u32::MAX / 2;

struct Network {
    head: Vec<usize>,
    cap: Vec<u32>,
    orig: Vec<u32>,
    out: Vec<Vec<usize>>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Self { head: Vec::new(), cap: Vec::new(), orig: Vec::new(), out: vec![Vec::new(); nodes] }
    }

    fn arc(&mut self, from: usize, to: usize, cap: u32) {
        let id = self.head.len();
        self.head.push(to);
        self.cap.push(cap);
        self.orig.push(cap);
        self.out[from].push(id);
        self.head.push(from);
        self.cap.push(0);
        self.orig.push(0);
        self.out[to].push(id + 1);
    }

    fn carries_flow(&self, arc: usize) -> bool {
        arc.is_multiple_of(2) && self.cap[arc] < self.orig[arc]
    }

    /// BFS augmenting path; returns whether flow increased.
    fn augment(&mut self, s: usize, t: usize, pred: &mut [usize]) -> bool {
        pred.fill(usize::MAX);
        pred[s] = usize::MAX - 1;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &a in &self.out[v] {
                let w = self.head[a];
                if self.cap[a] > 0 && pred[w] == usize::MAX {
                    pred[w] = a;
                    if w == t {
                        let mut x = t;
                        while x != s {
                            let a = pred[x];
                            self.cap[a] -= 1;
                            self.cap[a ^ 1] += 1;
                            x = self.head[a ^ 1];
                        }
                        return true;
                    }
                    queue.push_back(w);
                }
            }
        }
        false
    }

    fn residual_reach(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &a in &self.out[v] {
                let w = self.head[a];
                if self.cap[a] > 0 && !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }
}

/// Maximum number of vertex-disjoint `A`–`B` paths in `g - forbidden`.
pub fn max_disjoint_paths(
    g: &Graph,
    a: &[usize],
    b: &[usize],
    forbidden: &[usize],
) -> Result<DisjointPaths, GraphError> {
    let n = g.n();
    // 0 = free, 1 = A, 2 = B, 3 = forbidden
    let mut role = vec![0u8; n];
    for (set, tag) in [(a, 1u8), (b, 2), (forbidden, 3)] {
        for &v in set {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if role[v] != 0 && role[v] != tag {
                return Err(GraphError::OverlappingSets(v));
            }
            role[v] = tag;
        }
    }

    let vin = |v: usize| 2 * v;
    let vout = |v: usize| 2 * v + 1;
    let s = 2 * n;
    let t = 2 * n + 1;
    let mut net = Network::new(2 * n + 2);
    let mut split_arc = vec![usize::MAX; n];
    for v in 0..n {
        if role[v] == 3 {
            continue;
        }
        split_arc[v] = net.head.len();
        net.arc(vin(v), vout(v), 1);
        for &w in g.neighbours(v) {
            if role[w] != 3 {
                net.arc(vout(v), vin(w), INF);
            }
        }
    }
    for (v, &r) in role.iter().enumerate() {
        match r {
            1 => net.arc(s, vin(v), INF),
            2 => net.arc(vout(v), t, INF),
            _ => {}
        }
    }

    let mut pred = vec![usize::MAX; net.out.len()];
    let mut count = 0;
    while net.augment(s, t, &mut pred) {
        count += 1;
    }

    // Decompose: every vertex carries at most one unit, so following the
    // unique saturated out-arc from a source vertex traces a path.
    let mut paths = Vec::with_capacity(count);
    for &a0 in &net.out[s] {
        if !net.carries_flow(a0) {
            continue;
        }
        let mut walk = Vec::new();
        let mut node = net.head[a0];
        while node != t {
            let v = node / 2;
            walk.push(v);
            let out_node = vout(v);
            let next = net.out[out_node].iter().copied().find(|&arc| net.carries_flow(arc)).expect("flow conservation");
            node = net.head[next];
        }
        // Trim to an A–B path: last A vertex, then first B vertex after it.
        let start = walk.iter().rposition(|&v| role[v] == 1).unwrap_or(0);
        let rest = &walk[start..];
        let end = rest.iter().position(|&v| role[v] == 2).unwrap_or(rest.len() - 1);
        paths.push(rest[..=end].to_vec());
    }
    paths.sort();

    let reach = net.residual_reach(s);
    let separator = (0..n).filter(|&v| split_arc[v] != usize::MAX && reach[vin(v)] && !reach[vout(v)]).collect();

    Ok(DisjointPaths { count, paths, separator })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_two_by_three_columns() {
        // rows 0..2, cols 0..3; left column {0,3}, right column {2,5}
        let g = Graph::grid(2, 3);
        let r = max_disjoint_paths(&g, &[0, 3], &[2, 5], &[]).unwrap();
        assert_eq!(r.count, 2);
        assert_eq!(r.paths, vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert_eq!(r.separator.len(), 2);
    }

    #[test]
    fn unreachable_gives_zero() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let r = max_disjoint_paths(&g, &[0], &[3], &[]).unwrap();
        assert_eq!(r.count, 0);
        assert!(r.paths.is_empty());
    }

    #[test]
    fn capped_by_single_source() {
        let r = max_disjoint_paths(&Graph::complete(4), &[0], &[3], &[]).unwrap();
        assert_eq!(r.count, 1);
        assert_eq!(r.paths, vec![vec![0, 3]]);
    }

    #[test]
    fn forbidden_vertices_block() {
        let g = Graph::path(3);
        assert_eq!(max_disjoint_paths(&g, &[0], &[2], &[1]).unwrap().count, 0);
    }

    #[test]
    fn overlapping_sets_rejected() {
        let g = Graph::path(3);
        assert_eq!(max_disjoint_paths(&g, &[0, 1], &[1], &[]), Err(GraphError::OverlappingSets(1)));
    }

    #[test]
    fn adjacent_terminals() {
        let g = Graph::path(2);
        let r = max_disjoint_paths(&g, &[0], &[1], &[]).unwrap();
        assert_eq!(r.paths, vec![vec![0, 1]]);
    }
}
