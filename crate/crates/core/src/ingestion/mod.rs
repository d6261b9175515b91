//! Readers for external log formats and their mapping into a
//! [`GocedGraph`](crate::model::GocedGraph).
//!
//! | source                      | target                                   |
//! |-----------------------------|------------------------------------------|
//! | object / object type        | `Object` endurant / endurant type        |
//! | event / event type          | atomic event (`begin == end`) / type     |
//! | static object attribute     | quality with a static value              |
//! | timed object attribute      | quality plus a chain of half-open QVAS   |
//! | E2O relation                | E2O link, kind chosen by qualifier       |
//! | O2O relation                | one relator per relation, no existence   |
//! | event attribute             | event attribute                          |

mod coparticipation;
mod ekg;
mod ocel;
mod table;

use std::collections::{BTreeMap, BTreeSet};

pub use coparticipation::{reify_co_participation, CoParticipation, Reading};
pub use ekg::{ekg_to_goced, parse_ekg, EdgeLabel, EkgDump, EkgEdge, EkgNode, NodeLabel};
pub use ocel::{
    ocel_to_goced, parse_ocel2, OcelAttributeDecl, OcelEvent, OcelLog, OcelObject,
    OcelObjectAttribute, OcelRelationship, OcelType,
};
pub use table::parse_event_table;

use crate::model::{E2OKind, EntityId, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IngestError {
    #[error("syntax error at {location}: {message}")]
    Syntax { location: String, message: String },
    #[error("schema error at {path}: {reason}")]
    Schema { path: String, reason: String },
    #[error("missing column {0:?}")]
    MissingColumn(String),
    #[error("mapping error: {0}")]
    Mapping(String),
}

impl IngestError {
    pub(crate) fn schema(path: impl Into<String>, reason: impl Into<String>) -> Self {
        IngestError::Schema {
            path: path.into(),
            reason: reason.into(),
        }
    }
}

impl From<GraphError> for IngestError {
    fn from(err: GraphError) -> Self {
        IngestError::Mapping(err.to_string())
    }
}

/// Controls how log relations are lifted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappingConfig {
    /// Qualifier to E2O kind. Unlisted qualifiers map to `Participated`.
    pub e2o_qualifier_map: BTreeMap<String, E2OKind>,
    /// Name template for relator types synthesized from O2O qualifiers;
    /// `{qualifier}` is replaced verbatim.
    pub relator_type_naming: String,
    /// Link a timed attribute value to every event of the same object
    /// recorded at the value's timestamp, as `BroughtAbout`.
    pub link_attribute_changes: bool,
}

impl Default for MappingConfig {
    fn default() -> Self {
        let e2o_qualifier_map = [
            ("create", E2OKind::Created),
            ("CREATE", E2OKind::Created),
            ("delete", E2OKind::Terminated),
            ("DELETE", E2OKind::Terminated),
            ("terminate", E2OKind::Terminated),
        ]
        .into_iter()
        .map(|(q, k)| (q.to_string(), k))
        .collect();
        MappingConfig {
            e2o_qualifier_map,
            relator_type_naming: "{qualifier}".to_string(),
            link_attribute_changes: true,
        }
    }
}

impl MappingConfig {
    pub fn e2o_kind(&self, qualifier: &str) -> E2OKind {
        self.e2o_qualifier_map
            .get(qualifier)
            .copied()
            .unwrap_or(E2OKind::Participated)
    }

    pub fn relator_type_name(&self, qualifier: &str) -> String {
        let name = self.relator_type_naming.replace("{qualifier}", qualifier);
        if name.is_empty() {
            "related".to_string()
        } else {
            name
        }
    }
}

/// Hands out ids that do not clash with ids taken from the source log.
#[derive(Debug, Default)]
pub(crate) struct IdAllocator {
    used: BTreeSet<String>,
}

impl IdAllocator {
    pub(crate) fn reserve(&mut self, id: &str) -> bool {
        self.used.insert(id.to_string())
    }

    pub(crate) fn fresh(&mut self, base: &str) -> EntityId {
        let mut candidate = base.to_string();
        let mut n = 2;
        while self.used.contains(&candidate) {
            candidate = format!("{base}~{n}");
            n += 1;
        }
        self.used.insert(candidate.clone());
        EntityId::new(candidate)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qualifier_defaults() {
        let c = MappingConfig::default();
        assert_eq!(c.e2o_kind("create"), E2OKind::Created);
        assert_eq!(c.e2o_kind("DELETE"), E2OKind::Terminated);
        assert_eq!(c.e2o_kind("MODIFY"), E2OKind::Participated);
        assert_eq!(c.e2o_kind("Create"), E2OKind::Participated);
        assert_eq!(c.relator_type_name("invoices"), "invoices");
        assert_eq!(c.relator_type_name(""), "related");
    }

    #[test]
    fn allocator_avoids_reserved_ids() {
        let mut a = IdAllocator::default();
        a.reserve("x");
        assert_eq!(a.fresh("x").as_str(), "x~2");
        assert_eq!(a.fresh("x").as_str(), "x~3");
        assert_eq!(a.fresh("y").as_str(), "y");
    }
}
