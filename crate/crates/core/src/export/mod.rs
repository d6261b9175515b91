//! Serialization of a [`GocedGraph`](crate::model::GocedGraph) to Turtle
//! (gUFO vocabulary) and to canonical JSON, with readers for both so that
//! exported graphs can be loaded again.

mod json;
mod turtle;
mod vocab;

pub use json::{from_canonical_json, to_canonical_json};
pub use turtle::{from_turtle, to_turtle, TurtleDocument};
pub use vocab::{GUFO, RDF, RDFS, XSD};

use crate::model::GraphError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExportError {
    #[error("invalid base IRI {0:?}")]
    InvalidBaseIri(String),
    #[error("syntax error at line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unsupported construct: {0}")]
    UnsupportedConstruct(String),
    #[error("inconsistent graph: {0}")]
    Graph(#[from] GraphError),
}
