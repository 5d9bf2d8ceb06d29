//! Brute-force oracles shared by the integration tests. None of them call
//! into the library beyond the `Graph` adjacency accessors.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use pebblekit::graph::Graph;

/// All labelled states reachable from `x` by single pebble slides.
pub fn labelled_reach(g: &Graph, x: &[usize]) -> HashSet<Vec<usize>> {
    let mut seen = HashSet::from([x.to_vec()]);
    let mut queue = VecDeque::from([x.to_vec()]);
    while let Some(s) = queue.pop_front() {
        for i in 0..s.len() {
            for &w in g.neighbours(s[i]) {
                if s.contains(&w) {
                    continue;
                }
                let mut t = s.clone();
                t[i] = w;
                if seen.insert(t.clone()) {
                    queue.push_back(t);
                }
            }
        }
    }
    seen
}

/// Move distance from `x` to `y` by plain breadth-first search.
pub fn distance(g: &Graph, x: &[usize], y: &[usize]) -> Option<usize> {
    let mut dist = HashMap::from([(x.to_vec(), 0usize)]);
    let mut queue = VecDeque::from([x.to_vec()]);
    while let Some(s) = queue.pop_front() {
        let d = dist[&s];
        if s == y {
            return Some(d);
        }
        for i in 0..s.len() {
            for &w in g.neighbours(s[i]) {
                if !s.contains(&w) {
                    let mut t = s.clone();
                    t[i] = w;
                    dist.entry(t.clone()).or_insert_with(|| {
                        queue.push_back(t);
                        d + 1
                    });
                }
            }
        }
    }
    None
}

/// Whether `y` is reachable from `x` within `depth` moves, by depth-first
/// search with no memory between iterations.
pub fn reachable_within(g: &Graph, x: &mut Vec<usize>, y: &[usize], depth: usize) -> bool {
    if x == y {
        return true;
    }
    if depth == 0 {
        return false;
    }
    for i in 0..x.len() {
        let from = x[i];
        for &w in g.neighbours(from) {
            if x.contains(&w) {
                continue;
            }
            x[i] = w;
            let ok = reachable_within(g, x, y, depth - 1);
            x[i] = from;
            if ok {
                return true;
            }
        }
    }
    false
}

/// Iterative deepening: the least move count from `x` to `y`, up to `limit`.
pub fn iddfs(g: &Graph, x: &[usize], y: &[usize], limit: usize) -> Option<usize> {
    (0..=limit).find(|&d| reachable_within(g, &mut x.to_vec(), y, d))
}

/// Every permutation `p` with `(x[p[0]], ..., x[p[k-1]])` reachable from `x`.
pub fn group_oracle(g: &Graph, x: &[usize]) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    for y in labelled_reach(g, x) {
        let p: Option<Vec<usize>> = y.iter().map(|v| x.iter().position(|u| u == v)).collect();
        if let Some(p) = p {
            out.insert(p);
        }
    }
    out
}

/// All ordered `k`-tuples of distinct vertices.
pub fn all_states(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !cur.contains(&v) {
                cur.push(v);
                go(n, k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, k, &mut Vec::new(), &mut out);
    out
}

/// k-pebble-win by definition: every state can reach every other.
pub fn definitional_win(g: &Graph, k: usize) -> bool {
    let states = all_states(g.n(), k);
    states.iter().all(|y| labelled_reach(g, y).len() == states.len())
}

/// Simple paths from `s` whose interior avoids `avoid`, ending in `ends`.
pub fn simple_paths(g: &Graph, s: usize, ends: &[usize], avoid: &[bool]) -> Vec<Vec<usize>> {
    fn go(g: &Graph, path: &mut Vec<usize>, ends: &[usize], avoid: &[bool], out: &mut Vec<Vec<usize>>) {
        let v = *path.last().unwrap();
        if path.len() > 1 && ends.contains(&v) {
            out.push(path.clone());
            return;
        }
        for &w in g.neighbours(v) {
            if path.contains(&w) || (avoid[w] && !ends.contains(&w)) {
                continue;
            }
            path.push(w);
            go(g, path, ends, avoid, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    if ends.contains(&s) {
        out.push(vec![s]);
        return out;
    }
    go(g, &mut vec![s], ends, avoid, &mut out);
    out
}

/// Largest family of vertex-disjoint `a`–`b` paths avoiding `forbidden`.
pub fn brute_max_disjoint(g: &Graph, a: &[usize], b: &[usize], forbidden: &[usize]) -> usize {
    let n = g.n();
    let mut avoid = vec![false; n];
    for &v in a.iter().chain(b).chain(forbidden) {
        avoid[v] = true;
    }
    let mut paths: Vec<u64> = Vec::new();
    for &s in a {
        for p in simple_paths(g, s, b, &avoid) {
            paths.push(p.iter().fold(0, |m, &v| m | 1 << v));
        }
    }
    fn pack(paths: &[u64], used: u64) -> usize {
        let Some((&first, rest)) = paths.split_first() else {
            return 0;
        };
        let skip = pack(rest, used);
        if first & used == 0 {
            skip.max(1 + pack(rest, used | first))
        } else {
            skip
        }
    }
    pack(&paths, 0)
}

/// Smallest vertex set meeting every `a`–`b` path of `g - forbidden`.
pub fn brute_min_separator(g: &Graph, a: &[usize], b: &[usize], forbidden: &[usize]) -> usize {
    let n = g.n();
    let mut best = usize::MAX;
    for sep in 0u32..1 << n {
        let size = sep.count_ones() as usize;
        if size >= best || forbidden.iter().any(|&v| sep >> v & 1 == 1) {
            continue;
        }
        let gone = |v: usize| sep >> v & 1 == 1 || forbidden.contains(&v);
        let mut seen = vec![false; n];
        let mut queue: VecDeque<usize> = a.iter().copied().filter(|&v| !gone(v)).collect();
        for &v in &queue {
            seen[v] = true;
        }
        let mut hit = false;
        while let Some(v) = queue.pop_front() {
            if b.contains(&v) {
                hit = true;
                break;
            }
            for &w in g.neighbours(v) {
                if !seen[w] && !gone(w) {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if !hit {
            best = size;
        }
    }
    best
}

/// Whether vertex-disjoint paths join every pair, avoiding `blocked`.
pub fn brute_linked(g: &Graph, pairs: &[(usize, usize)], blocked: &[bool]) -> bool {
    let Some((&(s, t), rest)) = pairs.split_first() else {
        return true;
    };
    let mut avoid = blocked.to_vec();
    for &(a, b) in rest {
        avoid[a] = true;
        avoid[b] = true;
    }
    if avoid[s] || avoid[t] {
        return false;
    }
    simple_paths(g, s, &[t], &avoid).into_iter().any(|p| {
        let mut next = blocked.to_vec();
        for &v in &p {
            next[v] = true;
        }
        brute_linked(g, rest, &next)
    })
}

/// Connected labelled graphs on `n` vertices, by the classical recurrence
/// over the component containing vertex 0.
pub fn connected_count(n: usize) -> u64 {
    fn binom(n: usize, k: usize) -> u64 {
        (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
    }
    let all = |m: usize| 1u64 << (m * m.saturating_sub(1) / 2);
    let mut c = vec![0u64; n + 1];
    for m in 1..=n {
        let rest: u64 = (1..m).map(|j| binom(m - 1, j - 1) * c[j] * all(m - j)).sum();
        c[m] = all(m) - rest;
    }
    c[n]
}

/// Graph from an edge mask over the pairs `(i, j)`, `i < j`, in row order.
pub fn graph_of(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

pub fn is_connected(g: &Graph) -> bool {
    g.n() == 0 || labelled_reach(g, &[0]).len() == g.n()
}
