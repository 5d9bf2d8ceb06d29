//! Breadth-first search over game states.
//!
//! States are packed into a `u64` (`sum x_i * n^i`) whenever `n^k` fits;
//! otherwise they are stored as boxed slices. Small packed spaces use a
//! dense index instead of a hash map. Large frontiers are expanded on rayon
//! when the `parallel` feature is enabled; successors are merged in frontier
//! order, so the visit order is identical either way.

use std::hash::Hash;

use rustc_hash::FxHashMap;

use super::PebbleError;
use crate::graph::Graph;

const DENSE_LIMIT: u64 = 1 << 22;
#[cfg(feature = "parallel")]
const PAR_FRONTIER: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Visit {
    Continue,
    Stop,
}

trait Codec: Sync {
    type Key: Clone + Eq + Hash + Send + Sync;
    fn encode(&self, p: &[usize]) -> Self::Key;
    fn decode(&self, key: &Self::Key, out: &mut [usize]);
    /// Key after pebble `i` moves from `from` to `to`.
    fn shift(&self, key: &Self::Key, i: usize, from: usize, to: usize) -> Self::Key;
    fn dense_slot(&self, key: &Self::Key) -> usize;
}

struct Packed {
    n: u64,
    pow: Vec<u64>,
}

impl Codec for Packed {
    type Key = u64;

    fn encode(&self, p: &[usize]) -> u64 {
        p.iter().zip(&self.pow).map(|(&v, &w)| v as u64 * w).sum()
    }

    fn decode(&self, key: &u64, out: &mut [usize]) {
        let mut key = *key;
        for o in out.iter_mut() {
            *o = (key % self.n) as usize;
            key /= self.n;
        }
    }

    fn shift(&self, key: &u64, i: usize, from: usize, to: usize) -> u64 {
        key - from as u64 * self.pow[i] + to as u64 * self.pow[i]
    }

    fn dense_slot(&self, key: &u64) -> usize {
        *key as usize
    }
}

struct Wide;

impl Codec for Wide {
    type Key = Box<[u32]>;

    fn encode(&self, p: &[usize]) -> Box<[u32]> {
        p.iter().map(|&v| v as u32).collect()
    }

    fn decode(&self, key: &Box<[u32]>, out: &mut [usize]) {
        for (o, &v) in out.iter_mut().zip(key.iter()) {
            *o = v as usize;
        }
    }

    fn shift(&self, key: &Box<[u32]>, i: usize, _from: usize, to: usize) -> Box<[u32]> {
        let mut k = key.clone();
        k[i] = to as u32;
        k
    }

    fn dense_slot(&self, _key: &Box<[u32]>) -> usize {
        unreachable!("wide keys are always hashed")
    }
}

enum Index<K> {
    Dense(Vec<u32>),
    Hashed(FxHashMap<K, u32>),
}

impl<K: Clone + Eq + Hash> Index<K> {
    fn insert(&mut self, key: &K, id: u32, slot: impl FnOnce(&K) -> usize) -> bool {
        match self {
            Index::Dense(v) => {
                let s = &mut v[slot(key)];
                if *s == u32::MAX {
                    *s = id;
                    true
                } else {
                    false
                }
            }
            Index::Hashed(m) => {
                if m.contains_key(key) {
                    false
                } else {
                    m.insert(key.clone(), id);
                    true
                }
            }
        }
    }
}

/// Visited states in BFS order with parent links.
pub(crate) struct Run {
    states: Vec<usize>,
    k: usize,
    parent: Vec<u32>,
    stopped: Option<usize>,
}

impl Run {
    pub fn stopped_at(&self) -> Option<usize> {
        self.stopped
    }

    pub fn state(&self, i: usize) -> &[usize] {
        &self.states[i * self.k..(i + 1) * self.k]
    }

    pub fn states(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        self.states.chunks(self.k.max(1)).map(<[usize]>::to_vec)
    }

    /// States from the root to state `i`.
    pub fn path_to(&self, mut i: usize) -> Vec<Vec<usize>> {
        let mut out = vec![self.state(i).to_vec()];
        while self.parent[i] != u32::MAX {
            i = self.parent[i] as usize;
            out.push(self.state(i).to_vec());
        }
        out.reverse();
        out
    }
}

/// Game-state search over one graph with a fixed pebble count.
pub(crate) struct Explorer<'g> {
    graph: &'g Graph,
    k: usize,
}

impl<'g> Explorer<'g> {
    pub fn new(graph: &'g Graph, k: usize) -> Self {
        Self { graph, k }
    }

    /// BFS from `start`, calling `visit` on each newly discovered state in
    /// discovery order. Fails once more than `cap` states have been seen.
    pub fn explore(
        &self,
        start: &[usize],
        cap: usize,
        visit: impl FnMut(&[usize]) -> Visit,
    ) -> Result<Run, PebbleError> {
        let n = self.graph.n() as u64;
        match n.checked_pow(self.k as u32) {
            Some(space) if n > 0 => {
                let pow = (0..self.k).map(|i| n.pow(i as u32)).collect();
                let index = if space <= DENSE_LIMIT {
                    Index::Dense(vec![u32::MAX; space as usize])
                } else {
                    Index::Hashed(FxHashMap::default())
                };
                self.bfs(&Packed { n, pow }, index, start, cap, visit)
            }
            _ => self.bfs(&Wide, Index::Hashed(FxHashMap::default()), start, cap, visit),
        }
    }

    /// Appends the successors of `pos` in (pebble, target vertex) order.
    fn successors<C: Codec>(
        &self,
        codec: &C,
        key: &C::Key,
        pos: &[usize],
        occupied: &mut [u64],
        out: &mut Vec<C::Key>,
    ) {
        for &v in pos {
            occupied[v / 64] |= 1 << (v % 64);
        }
        for (i, &from) in pos.iter().enumerate() {
            for &w in self.graph.neighbours(from) {
                if occupied[w / 64] >> (w % 64) & 1 == 0 {
                    out.push(codec.shift(key, i, from, w));
                }
            }
        }
        for &v in pos {
            occupied[v / 64] = 0;
        }
    }

    fn bfs<C: Codec>(
        &self,
        codec: &C,
        mut index: Index<C::Key>,
        start: &[usize],
        cap: usize,
        mut visit: impl FnMut(&[usize]) -> Visit,
    ) -> Result<Run, PebbleError> {
        if cap == 0 {
            return Err(PebbleError::StateCap { cap });
        }
        let k = self.k;
        let words = self.graph.n().div_ceil(64).max(1);
        let mut keys: Vec<C::Key> = Vec::new();
        let mut run = Run { states: Vec::new(), k, parent: Vec::new(), stopped: None };

        let root = codec.encode(start);
        index.insert(&root, 0, |key| codec.dense_slot(key));
        keys.push(root);
        run.states.extend_from_slice(start);
        run.parent.push(u32::MAX);
        if visit(start) == Visit::Stop {
            run.stopped = Some(0);
            return Ok(run);
        }

        let mut scratch = vec![0; k];
        let mut occupied = vec![0u64; words];
        let mut succ: Vec<C::Key> = Vec::new();
        let mut level_start = 0;
        while level_start < keys.len() {
            let level_end = keys.len();
            let batch = self.expand_parallel(codec, &keys[level_start..level_end], &run, level_start);
            for idx in level_start..level_end {
                let successors = match &batch {
                    Some(b) => &b[idx - level_start],
                    None => {
                        succ.clear();
                        let key = keys[idx].clone();
                        self.successors(codec, &key, run.state(idx), &mut occupied, &mut succ);
                        &succ
                    }
                };
                for key in successors {
                    let id = keys.len() as u32;
                    if index.insert(key, id, |key| codec.dense_slot(key)) {
                        if keys.len() >= cap {
                            return Err(PebbleError::StateCap { cap });
                        }
                        codec.decode(key, &mut scratch);
                        keys.push(key.clone());
                        run.states.extend_from_slice(&scratch);
                        run.parent.push(idx as u32);
                        if visit(&scratch) == Visit::Stop {
                            run.stopped = Some(id as usize);
                            return Ok(run);
                        }
                    }
                }
            }
            level_start = level_end;
        }
        Ok(run)
    }

    #[cfg(feature = "parallel")]
    fn expand_parallel<C: Codec>(
        &self,
        codec: &C,
        frontier: &[C::Key],
        run: &Run,
        offset: usize,
    ) -> Option<Vec<Vec<C::Key>>> {
        use rayon::prelude::*;
        if frontier.len() < PAR_FRONTIER {
            return None;
        }
        let words = self.graph.n().div_ceil(64).max(1);
        Some(
            frontier
                .par_iter()
                .enumerate()
                .map_init(
                    || vec![0u64; words],
                    |occupied, (i, key)| {
                        let mut out = Vec::new();
                        self.successors(codec, key, run.state(offset + i), occupied, &mut out);
                        out
                    },
                )
                .collect(),
        )
    }

    #[cfg(not(feature = "parallel"))]
    fn expand_parallel<C: Codec>(
        &self,
        _codec: &C,
        _frontier: &[C::Key],
        _run: &Run,
        _offset: usize,
    ) -> Option<Vec<Vec<C::Key>>> {
        None
    }
}
