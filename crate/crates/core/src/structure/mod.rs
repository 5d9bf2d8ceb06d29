//! Pebble-permutation groups, the k-pebble-win decision, red/blue colourings
//! and bare-path witnesses for graphs that are not pebble-win.

mod perm;
mod sweep;

use std::collections::BTreeMap;
use std::hash::Hash;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{maximal_bare_paths, BarePath, Graph};
use crate::pebble::{GameState, PebbleError, DEFAULT_STATE_CAP};

pub use perm::{Perm, PermGroup};
pub use sweep::{
    verify_colouring_contract, verify_structure_theorem, verify_structure_theorem_with, Strategy, SweepFailure,
    SweepReport,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("pebble count {k} out of range for a graph on {n} vertices")]
    PebbleCount { k: usize, n: usize },
    #[error("graph is {k}-pebble-win, so no red/blue colouring exists")]
    PebbleWin { k: usize },
    #[error("structure witness needs at least k + 2 = {need} vertices, graph has {n}")]
    TooFewVertices { need: usize, n: usize },
    #[error("n_max = {0} is outside 1..=7")]
    SweepRange(usize),
    #[error(transparent)]
    Pebble(#[from] PebbleError),
}

/// Unlabelled configurations: the set of occupied vertices.
trait ConfigKey: Eq + Hash + Sized {
    fn of(pos: &[usize]) -> Self;
}

impl ConfigKey for u64 {
    fn of(pos: &[usize]) -> u64 {
        pos.iter().fold(0, |m, &v| m | 1 << v)
    }
}

impl ConfigKey for Box<[u32]> {
    fn of(pos: &[usize]) -> Box<[u32]> {
        let mut s: Vec<u32> = pos.iter().map(|&v| v as u32).collect();
        s.sort_unstable();
        s.into_boxed_slice()
    }
}

/// The pebble-permutation group of `(g, x)`: all `σ` with `x^σ` achievable
/// from `x`.
///
/// Labelled states form a covering of the graph of unlabelled
/// configurations with fibre `S_k`. A BFS tree over configurations fixes one
/// labelled representative per configuration, and every non-tree move
/// contributes the permutation relating its endpoint to that
/// representative; these generate the group. `cap` bounds the number of
/// configurations.
pub fn pebble_permutation_group(g: &Graph, x: &GameState, cap: usize) -> Result<PermGroup, StructureError> {
    group_search(g, x, cap, false)
}

fn group_search(g: &Graph, x: &GameState, cap: usize, stop_at_full: bool) -> Result<PermGroup, StructureError> {
    x.validate(g)?;
    if !g.is_connected() {
        return Err(StructureError::Disconnected);
    }
    if g.n() <= 64 {
        holonomy::<u64>(g, x.positions(), cap, stop_at_full)
    } else {
        holonomy::<Box<[u32]>>(g, x.positions(), cap, stop_at_full)
    }
}

fn holonomy<K: ConfigKey>(g: &Graph, x: &[usize], cap: usize, stop_at_full: bool) -> Result<PermGroup, StructureError> {
    let k = x.len();
    let full: u128 = (1..=k as u128).product();
    let mut group = PermGroup::trivial(k);
    if cap == 0 {
        return Err(PebbleError::StateCap { cap }.into());
    }
    if stop_at_full && full == 1 {
        return Ok(group);
    }
    let mut ids: FxHashMap<K, u32> = FxHashMap::default();
    // reps[c*k..(c+1)*k] is the labelled representative of configuration c
    let mut reps: Vec<usize> = x.to_vec();
    ids.insert(K::of(x), 0);
    let mut occupied = vec![false; g.n()];
    let mut y = vec![0; k];
    let mut rho = vec![0; k];
    let mut head = 0;
    while head * k < reps.len() {
        let cur = head;
        head += 1;
        for &v in &reps[cur * k..(cur + 1) * k] {
            occupied[v] = true;
        }
        for i in 0..k {
            let from = reps[cur * k + i];
            for &w in g.neighbours(from) {
                if occupied[w] {
                    continue;
                }
                y.copy_from_slice(&reps[cur * k..(cur + 1) * k]);
                y[i] = w;
                let key = K::of(&y);
                let next = ids.len() as u32;
                match ids.get(&key) {
                    None => {
                        if ids.len() >= cap {
                            return Err(PebbleError::StateCap { cap }.into());
                        }
                        ids.insert(key, next);
                        reps.extend_from_slice(&y);
                    }
                    Some(&t) => {
                        let rep = &reps[t as usize * k..(t as usize + 1) * k];
                        for (r, &yv) in rho.iter_mut().zip(&y) {
                            *r = rep.iter().position(|&v| v == yv).unwrap();
                        }
                        if rho.iter().enumerate().any(|(a, &b)| a != b)
                            && group.insert(Perm::from_images(rho.clone()).unwrap())
                            && stop_at_full
                            && group.order() == full
                        {
                            return Ok(group);
                        }
                    }
                }
            }
        }
        for &v in &reps[cur * k..(cur + 1) * k] {
            occupied[v] = false;
        }
    }
    Ok(group)
}

fn check_k(g: &Graph, k: usize) -> Result<(), StructureError> {
    if k == 0 || k > g.n() {
        return Err(StructureError::PebbleCount { k, n: g.n() });
    }
    Ok(())
}

/// Whether every `k`-pebble state is achievable from every other, decided
/// by comparing the group of the initial state with `S_k`.
pub fn is_k_pebble_win(g: &Graph, k: usize) -> Result<bool, StructureError> {
    is_k_pebble_win_capped(g, k, DEFAULT_STATE_CAP)
}

pub fn is_k_pebble_win_capped(g: &Graph, k: usize, cap: usize) -> Result<bool, StructureError> {
    check_k(g, k)?;
    Ok(group_search(g, &GameState::initial(k), cap, true)?.is_symmetric())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Colour {
    #[serde(rename = "r")]
    Red,
    #[serde(rename = "b")]
    Blue,
}

/// Colour per pebble index. Serialized as a map from 1-based pebble labels
/// to `"r"` / `"b"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Colouring(pub Vec<Colour>);

impl Colouring {
    pub fn class(&self, c: Colour) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] == c).collect()
    }
}

impl Serialize for Colouring {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let m: BTreeMap<usize, Colour> = self.0.iter().enumerate().map(|(i, &c)| (i + 1, c)).collect();
        m.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Colouring {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let m = BTreeMap::<usize, Colour>::deserialize(d)?;
        if m.keys().copied().ne(1..=m.len()) {
            return Err(serde::de::Error::custom("colouring keys must be 1..=k"));
        }
        Ok(Self(m.into_values().collect()))
    }
}

/// Splits the pebbles of a group that is not `S_k` into two classes with no
/// transposition across: the transposition-graph component of pebble 0 is
/// red, everything else blue.
pub fn colouring_from_group(group: &PermGroup) -> Option<Colouring> {
    let k = group.degree();
    let mut colour = vec![Colour::Blue; k];
    colour[0] = Colour::Red;
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        for (j, c) in colour.iter_mut().enumerate() {
            if *c == Colour::Blue && group.contains(&Perm::transposition(k, i, j)) {
                *c = Colour::Red;
                stack.push(j);
            }
        }
    }
    colour.contains(&Colour::Blue).then_some(Colouring(colour))
}

pub fn rb_colouring(g: &Graph, x: &GameState) -> Result<Colouring, StructureError> {
    rb_colouring_capped(g, x, DEFAULT_STATE_CAP)
}

pub fn rb_colouring_capped(g: &Graph, x: &GameState, cap: usize) -> Result<Colouring, StructureError> {
    let group = pebble_permutation_group(g, x, cap)?;
    colouring_from_group(&group).ok_or(StructureError::PebbleWin { k: x.k() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub path: BarePath,
    /// Bridge status of each path edge, in path order.
    pub bridges: Vec<bool>,
    /// Set when the graph is a cycle (whose edges are never bridges).
    pub cycle: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub pebble_win: bool,
    pub witness: Option<Witness>,
    pub colouring: Option<Colouring>,
}

/// The first maximal bare path (lexicographic order) that misses at most `k`
/// vertices and is either made of bridges or spans a cycle graph.
pub fn find_witness(g: &Graph, k: usize) -> Option<Witness> {
    let cycle = g.is_cycle();
    let bridges = g.bridges();
    maximal_bare_paths(g).into_iter().find_map(|p| {
        if p.complement_size(g) > k {
            return None;
        }
        let flags: Vec<bool> = p.edges().map(|(u, v)| bridges.binary_search(&(u.min(v), u.max(v))).is_ok()).collect();
        (cycle || flags.iter().all(|&b| b)).then_some(Witness { path: p, bridges: flags, cycle })
    })
}

pub fn structure_witness(g: &Graph, k: usize) -> Result<StructureReport, StructureError> {
    structure_witness_capped(g, k, DEFAULT_STATE_CAP)
}

pub fn structure_witness_capped(g: &Graph, k: usize, cap: usize) -> Result<StructureReport, StructureError> {
    check_k(g, k)?;
    if g.n() < k + 2 {
        return Err(StructureError::TooFewVertices { need: k + 2, n: g.n() });
    }
    let group = pebble_permutation_group(g, &GameState::initial(k), cap)?;
    if group.is_symmetric() {
        return Ok(StructureReport { pebble_win: true, witness: None, colouring: None });
    }
    Ok(StructureReport { pebble_win: false, witness: find_witness(g, k), colouring: colouring_from_group(&group) })
}
