//! Labelled enumeration of small connected graphs.

use super::{Graph, GraphError};

/// Number of vertex pairs on `n` vertices, i.e. bits in an edge mask.
pub fn edge_slot_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Graph on `n` vertices whose edge set is read from `mask`; bit `b` stands
/// for the `b`-th pair `(i, j)`, `i < j`, in lexicographic order.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut g = Graph::new(n);
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> bit & 1 == 1 {
                g.add_edge(i, j).unwrap();
            }
            bit += 1;
        }
    }
    g
}

/// Connectivity straight from the mask using bitset adjacency.
pub(crate) fn mask_is_connected(n: usize, mask: u64) -> bool {
    if n <= 1 {
        return true;
    }
    let mut adj = [0u16; 8];
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> bit & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
            bit += 1;
        }
    }
    let all: u16 = (1 << n) - 1;
    let mut seen: u16 = 1;
    let mut frontier: u16 = 1;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & !seen;
        seen |= new;
        frontier |= new;
    }
    seen == all
}

/// Every connected labelled graph on `n` vertices, exactly once, in
/// increasing edge-mask order.
#[derive(Clone, Debug)]
pub struct ConnectedGraphs {
    n: usize,
    next: u64,
    end: u64,
}

impl Iterator for ConnectedGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        while self.next < self.end {
            let mask = self.next;
            self.next += 1;
            if mask_is_connected(self.n, mask) {
                return Some(graph_from_mask(self.n, mask));
            }
        }
        None
    }
}

pub fn enumerate_connected_graphs(n: usize) -> Result<ConnectedGraphs, GraphError> {
    if !(1..=8).contains(&n) {
        return Err(GraphError::EnumerationRange(n));
    }
    Ok(ConnectedGraphs { n, next: 0, end: 1u64 << edge_slot_count(n) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_connected_graphs(1).unwrap().count(), 1);
        assert_eq!(enumerate_connected_graphs(2).unwrap().count(), 1);
        assert_eq!(enumerate_connected_graphs(3).unwrap().count(), 4);
        assert_eq!(enumerate_connected_graphs(4).unwrap().count(), 38);
    }

    #[test]
    fn mask_connectivity_agrees_with_bfs() {
        for mask in 0..1u64 << edge_slot_count(5) {
            let g = graph_from_mask(5, mask);
            assert_eq!(mask_is_connected(5, mask), g.is_connected(), "mask {mask:#b}");
        }
    }

    #[test]
    fn out_of_range() {
        assert_eq!(enumerate_connected_graphs(0).unwrap_err(), GraphError::EnumerationRange(0));
        assert_eq!(enumerate_connected_graphs(9).unwrap_err(), GraphError::EnumerationRange(9));
    }
}
