//! Pebble-pushing games on finite graphs, pebble-permutation groups, and
//! ray graphs and linkages in grid-like infinite graphs.

pub mod dot;
mod error;
pub mod graph;
pub mod pebble;
pub mod ray;
pub mod structure;
pub mod world;

pub use error::Error;
