use thiserror::Error;

use crate::graph::GraphError;
use crate::pebble::PebbleError;
use crate::ray::RayError;
use crate::structure::StructureError;
use crate::world::WorldError;

/// Any error raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Pebble(#[from] PebbleError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    World(#[from] WorldError),
    #[error(transparent)]
    Ray(#[from] RayError),
}

impl Error {
    /// Whether a configurable resource cap stopped the computation, as
    /// opposed to the input being invalid.
    pub fn is_resource(&self) -> bool {
        match self {
            Error::Graph(_) => false,
            Error::Pebble(e) | Error::Structure(StructureError::Pebble(e)) => matches!(e, PebbleError::StateCap { .. }),
            Error::Structure(_) => false,
            Error::World(e) | Error::Ray(RayError::World(e)) => matches!(e, WorldError::WindowCap { .. }),
            Error::Ray(e) => matches!(e, RayError::SearchCap { .. } | RayError::FrontierWidth { .. }),
        }
    }
}
