//! The pebble-pushing game: labelled pebbles on distinct vertices, one
//! pebble slides along an edge onto an empty vertex per move.

mod search;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

pub(crate) use search::{Explorer, Visit};

/// Hard limit on the number of states a single search may visit.
pub const DEFAULT_STATE_CAP: usize = 5_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PebbleError {
    #[error("invalid game state: {0}")]
    InvalidState(String),
    #[error("game states have different pebble counts ({0} and {1})")]
    PebbleCountMismatch(usize, usize),
    #[error("step {step} of the move sequence is not a legal move")]
    IllegalMove { step: usize },
    #[error("state-space cap of {cap} states exceeded")]
    StateCap { cap: usize },
}

/// Positions `(x_1, ..., x_k)` of `k` labelled pebbles; pebble `i` sits on
/// vertex `positions[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GameState(Vec<usize>);

impl GameState {
    pub fn new(positions: Vec<usize>) -> Self {
        Self(positions)
    }

    /// Pebbles on vertices `0..k`.
    pub fn initial(k: usize) -> Self {
        Self((0..k).collect())
    }

    pub fn positions(&self) -> &[usize] {
        &self.0
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn into_positions(self) -> Vec<usize> {
        self.0
    }

    pub fn validate(&self, g: &Graph) -> Result<(), PebbleError> {
        let n = g.n();
        if self.0.is_empty() {
            return Err(PebbleError::InvalidState("no pebbles".into()));
        }
        if self.0.len() > n {
            return Err(PebbleError::InvalidState(format!("{} pebbles on {n} vertices", self.0.len())));
        }
        let mut seen = vec![false; n];
        for &v in &self.0 {
            if v >= n {
                return Err(PebbleError::InvalidState(format!("vertex {v} out of range")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(PebbleError::InvalidState(format!("vertex {v} holds two pebbles")));
            }
        }
        Ok(())
    }

    /// `self^sigma = (x_sigma(1), ..., x_sigma(k))`.
    pub fn permuted(&self, sigma: &[usize]) -> Self {
        Self(sigma.iter().map(|&i| self.0[i]).collect())
    }

    /// Whether `next` is obtained from `self` by one legal move on `g`.
    pub fn is_move_to(&self, next: &GameState, g: &Graph) -> bool {
        if self.k() != next.k() {
            return false;
        }
        let mut changed = self.0.iter().zip(&next.0).filter(|(a, b)| a != b);
        match (changed.next(), changed.next()) {
            (Some((&from, &to)), None) => g.has_edge(from, to) && !self.0.contains(&to),
            _ => false,
        }
    }
}

impl From<Vec<usize>> for GameState {
    fn from(v: Vec<usize>) -> Self {
        Self(v)
    }
}

/// States `X_1, ..., X_m` where every `X_{i+1}` is a move from `X_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MoveSequence(Vec<GameState>);

impl MoveSequence {
    pub fn new(g: &Graph, states: Vec<GameState>) -> Result<Self, PebbleError> {
        let seq = Self(states);
        seq.validate(g)?;
        Ok(seq)
    }

    pub fn validate(&self, g: &Graph) -> Result<(), PebbleError> {
        let Some(first) = self.0.first() else {
            return Err(PebbleError::InvalidState("empty move sequence".into()));
        };
        first.validate(g)?;
        for (step, w) in self.0.windows(2).enumerate() {
            if !w[0].is_move_to(&w[1], g) {
                return Err(PebbleError::IllegalMove { step: step + 1 });
            }
        }
        Ok(())
    }

    pub fn states(&self) -> &[GameState] {
        &self.0
    }

    pub fn first(&self) -> &GameState {
        &self.0[0]
    }

    pub fn last(&self) -> &GameState {
        self.0.last().unwrap()
    }

    /// Number of moves (one less than the number of states).
    pub fn moves(&self) -> usize {
        self.0.len() - 1
    }
}

/// The pebble-pushing game on a fixed graph with a state-space cap.
#[derive(Clone, Copy, Debug)]
pub struct PebbleGame<'g> {
    graph: &'g Graph,
    cap: usize,
}

impl<'g> PebbleGame<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        Self { graph, cap: DEFAULT_STATE_CAP }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Every state one move away, ordered by pebble index and then target
    /// vertex.
    pub fn legal_moves(&self, s: &GameState) -> Result<Vec<GameState>, PebbleError> {
        s.validate(self.graph)?;
        let pos = s.positions();
        let mut out = Vec::new();
        for (i, &v) in pos.iter().enumerate() {
            for &w in self.graph.neighbours(v) {
                if !pos.contains(&w) {
                    let mut next = pos.to_vec();
                    next[i] = w;
                    out.push(GameState(next));
                }
            }
        }
        Ok(out)
    }

    fn check_pair(&self, x: &GameState, y: &GameState) -> Result<(), PebbleError> {
        x.validate(self.graph)?;
        y.validate(self.graph)?;
        if x.k() != y.k() {
            return Err(PebbleError::PebbleCountMismatch(x.k(), y.k()));
        }
        Ok(())
    }

    pub fn is_achievable(&self, x: &GameState, y: &GameState) -> Result<bool, PebbleError> {
        Ok(self.solve(x, y)?.is_some())
    }

    /// A shortest move sequence from `x` to `y`, or `None` if `y` is not
    /// achievable from `x`.
    pub fn solve(&self, x: &GameState, y: &GameState) -> Result<Option<MoveSequence>, PebbleError> {
        self.check_pair(x, y)?;
        let explorer = Explorer::new(self.graph, x.k());
        let target = y.positions();
        let run =
            explorer.explore(x.positions(), self.cap, |p| if p == target { Visit::Stop } else { Visit::Continue })?;
        Ok(run.stopped_at().map(|i| MoveSequence(run.path_to(i).into_iter().map(GameState).collect())))
    }

    /// The reachability class of `x`, sorted.
    pub fn reachable_states(&self, x: &GameState) -> Result<Vec<GameState>, PebbleError> {
        x.validate(self.graph)?;
        let explorer = Explorer::new(self.graph, x.k());
        let run = explorer.explore(x.positions(), self.cap, |_| Visit::Continue)?;
        let mut states: Vec<GameState> = run.states().map(GameState).collect();
        states.sort();
        Ok(states)
    }
}
