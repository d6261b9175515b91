//! The instance model: identifiers, time, endurants, events, situations and
//! the links between them, held in a [`GocedGraph`].

mod graph;
mod time;
mod types;

pub use graph::{GocedGraph, GraphError, QueryError, DEFAULT_MIN_MEDIATION};
pub use time::{TimeInterval, TimeParseError, TimePoint};
pub use types::*;
