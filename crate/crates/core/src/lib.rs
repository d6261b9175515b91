//! Object-centric event data grounded in a foundational ontology.
//!
//! Logs in OCEL 2.0 JSON, event-table CSV or event-knowledge-graph CSV
//! dumps are lifted into a [`GocedGraph`](model::GocedGraph) of endurants
//! (objects, qualities, relators), events and quality value attribution
//! situations. The graph can then be checked against the ontology's axioms
//! ([`validation`]), queried for temporal relations and object states
//! ([`temporal`]) and exported as Turtle or canonical JSON ([`export`]).

pub mod model;
pub mod temporal;
pub mod validation;
pub mod ingestion;
pub mod export;
pub mod cli;
