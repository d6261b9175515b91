//! Event knowledge graph dumps as two CSV files:
//! `nodes.csv` (`id,label,type,timestamp`) and
//! `edges.csv` (`source,target,label,qualifier`).

use std::collections::BTreeMap;

use super::{IdAllocator, IngestError, MappingConfig};
use crate::model::{
    E2OKind, E2OLink, Endurant, EndurantType, EntityId, Event, EventType, GocedGraph,
    SortalCategory, TimePoint,
};

pub const NODE_COLUMNS: [&str; 4] = ["id", "label", "type", "timestamp"];
pub const EDGE_COLUMNS: [&str; 4] = ["source", "target", "label", "qualifier"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeLabel {
    Event,
    Object,
}

/// `E2O` (or `CORR`) connects an event and an object; `O2O` (or `REL`)
/// connects two objects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeLabel {
    E2O,
    O2O,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EkgNode {
    pub id: String,
    pub label: NodeLabel,
    pub node_type: String,
    pub timestamp: Option<TimePoint>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EkgEdge {
    pub source: String,
    pub target: String,
    pub label: EdgeLabel,
    pub qualifier: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct EkgDump {
    pub nodes: Vec<EkgNode>,
    pub edges: Vec<EkgEdge>,
}

fn read_table(
    bytes: &[u8],
    columns: [&'static str; 4],
    file: &str,
) -> Result<Vec<(u64, [String; 4])>, IngestError> {
    let syntax = |err: csv::Error| IngestError::Syntax {
        location: match err.position() {
            Some(p) => format!("{file} line {}", p.line()),
            None => file.to_string(),
        },
        message: err.to_string(),
    };
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(bytes);
    let headers = reader.headers().map_err(syntax)?.clone();
    let mut idx = [0usize; 4];
    for (slot, name) in idx.iter_mut().zip(columns) {
        *slot = headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| IngestError::MissingColumn(format!("{file}: {name}")))?;
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(syntax)?;
        let line = record.position().map_or(0, |p| p.line());
        let get = |i: usize| record.get(idx[i]).unwrap_or("").to_string();
        rows.push((line, [get(0), get(1), get(2), get(3)]));
    }
    Ok(rows)
}

/// Parses the two CSV files of a dump and checks that event nodes carry a
/// timestamp.
pub fn parse_ekg(nodes_csv: &[u8], edges_csv: &[u8]) -> Result<EkgDump, IngestError> {
    let mut dump = EkgDump::default();
    for (line, [id, label, node_type, timestamp]) in read_table(nodes_csv, NODE_COLUMNS, "nodes.csv")? {
        let path = format!("nodes.csv line {line}");
        let label = match label.to_ascii_lowercase().as_str() {
            "event" => NodeLabel::Event,
            "object" | "entity" => NodeLabel::Object,
            other => return Err(IngestError::schema(path, format!("unknown node label {other:?}"))),
        };
        let timestamp = if timestamp.is_empty() {
            None
        } else {
            Some(
                TimePoint::parse(&timestamp)
                    .map_err(|e| IngestError::schema(path.clone(), e.to_string()))?,
            )
        };
        if label == NodeLabel::Event && timestamp.is_none() {
            return Err(IngestError::schema(path, format!("event node {id:?} has no timestamp")));
        }
        if id.is_empty() {
            return Err(IngestError::schema(path, "empty node id"));
        }
        dump.nodes.push(EkgNode {
            id,
            label,
            node_type,
            timestamp,
        });
    }
    for (line, [source, target, label, qualifier]) in read_table(edges_csv, EDGE_COLUMNS, "edges.csv")? {
        let label = match label.to_ascii_uppercase().as_str() {
            "E2O" | "CORR" => EdgeLabel::E2O,
            "O2O" | "REL" => EdgeLabel::O2O,
            other => {
                return Err(IngestError::schema(
                    format!("edges.csv line {line}"),
                    format!("unknown edge label {other:?}"),
                ))
            }
        };
        dump.edges.push(EkgEdge {
            source,
            target,
            label,
            qualifier,
        });
    }
    Ok(dump)
}

/// Object nodes become objects, event nodes atomic events, E2O edges
/// participation links and each O2O edge its own relator without an
/// existence interval.
pub fn ekg_to_goced(dump: &EkgDump) -> Result<GocedGraph, IngestError> {
    let config = MappingConfig::default();
    let mut ids = IdAllocator::default();
    let mut labels: BTreeMap<&str, NodeLabel> = BTreeMap::new();
    for n in &dump.nodes {
        if labels.insert(&n.id, n.label).is_some() {
            return Err(IngestError::schema("nodes.csv", format!("duplicate node id {:?}", n.id)));
        }
        ids.reserve(&n.id);
    }
    for (i, e) in dump.edges.iter().enumerate() {
        let path = format!("edges[{i}]");
        let ends = [&e.source, &e.target].map(|end| labels.get(end.as_str()).copied());
        match (e.label, ends) {
            (_, [None, _]) => {
                return Err(IngestError::schema(path, format!("unknown node {:?}", e.source)))
            }
            (_, [_, None]) => {
                return Err(IngestError::schema(path, format!("unknown node {:?}", e.target)))
            }
            (EdgeLabel::E2O, [Some(a), Some(b)]) if a != b => {}
            (EdgeLabel::O2O, [Some(NodeLabel::Object), Some(NodeLabel::Object)])
                if e.source != e.target => {}
            _ => {
                return Err(IngestError::schema(
                    path,
                    format!("{:?} edge cannot connect {:?} and {:?}", e.label, e.source, e.target),
                ))
            }
        }
    }

    let mut g = GocedGraph::new();
    let mut object_types: BTreeMap<&str, EntityId> = BTreeMap::new();
    let mut event_types: BTreeMap<&str, EntityId> = BTreeMap::new();
    for n in &dump.nodes {
        match n.label {
            NodeLabel::Object => {
                let name = if n.node_type.is_empty() { "Object" } else { &n.node_type };
                let type_id = match object_types.get(name) {
                    Some(id) => id.clone(),
                    None => {
                        let id = ids.fresh(&format!("objectType:{name}"));
                        g.insert(EndurantType::new(id.clone(), name, SortalCategory::Unspecified))?;
                        object_types.insert(name, id.clone());
                        id
                    }
                };
                g.insert(Endurant::object(n.id.as_str(), type_id))?;
            }
            NodeLabel::Event => {
                let name = if n.node_type.is_empty() { "Event" } else { &n.node_type };
                let type_id = match event_types.get(name) {
                    Some(id) => id.clone(),
                    None => {
                        let id = ids.fresh(&format!("eventType:{name}"));
                        g.insert(EventType::new(id.clone(), name))?;
                        event_types.insert(name, id.clone());
                        id
                    }
                };
                let at = n
                    .timestamp
                    .ok_or_else(|| IngestError::Mapping(format!("event {} has no timestamp", n.id)))?;
                g.insert(Event::instant(n.id.as_str(), type_id, at))?;
            }
        }
    }

    let mut relator_types: BTreeMap<&str, EntityId> = BTreeMap::new();
    for e in &dump.edges {
        match e.label {
            EdgeLabel::E2O => {
                let (event, object) = if labels[e.source.as_str()] == NodeLabel::Event {
                    (&e.source, &e.target)
                } else {
                    (&e.target, &e.source)
                };
                g.link(E2OLink::new(event.as_str(), object.as_str(), E2OKind::Participated))?;
            }
            EdgeLabel::O2O => {
                let type_id = match relator_types.get(e.qualifier.as_str()) {
                    Some(id) => id.clone(),
                    None => {
                        let name = config.relator_type_name(&e.qualifier);
                        let id = ids.fresh(&format!("relatorType:{name}"));
                        g.insert(EndurantType::new(id.clone(), name, SortalCategory::Unspecified))?;
                        relator_types.insert(&e.qualifier, id.clone());
                        id
                    }
                };
                let relator_id = ids.fresh(&format!("{}~{}~{}", e.source, e.qualifier, e.target));
                let mut relator =
                    Endurant::relator(relator_id, type_id, [e.source.as_str(), e.target.as_str()]);
                if !e.qualifier.is_empty() {
                    relator = relator.with_label(e.qualifier.as_str());
                }
                g.insert(relator)?;
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::EndurantCategory;

    const NODES: &str = "id,label,type,timestamp\n\
                         e1,Event,assign student,2024-01-10T09:00:00Z\n\
                         e2,Event,assign student,2024-02-10T09:00:00Z\n\
                         S,Object,Student,\n\
                         M,Object,Professor,\n\
                         D,Object,Professor,\n";
    const EDGES: &str = "source,target,label,qualifier\n\
                         e1,M,E2O,\n\
                         e1,S,E2O,\n\
                         e2,D,E2O,\n\
                         S,e2,E2O,\n\
                         M,S,O2O,\n\
                         D,S,O2O,\n";

    #[test]
    fn supervision_graph() {
        let dump = parse_ekg(NODES.as_bytes(), EDGES.as_bytes()).unwrap();
        assert_eq!(dump.nodes.len(), 5);
        assert_eq!(dump.edges.len(), 6);
        let g = ekg_to_goced(&dump).unwrap();
        let count = |c| g.endurants().filter(|e| e.category == c).count();
        assert_eq!(count(EndurantCategory::Object), 3);
        assert_eq!(count(EndurantCategory::Relator), 2);
        assert_eq!(g.events().count(), 2);
        assert_eq!(g.e2o_links().count(), 4);
        assert!(g.e2o_links().all(|l| l.kind == E2OKind::Participated));
        assert!(g.endurants().all(|e| e.existence.is_none()));
    }

    #[test]
    fn objects_only() {
        let dump = parse_ekg(b"id,label,type,timestamp\na,Object,T,\n", b"source,target,label,qualifier\n")
            .unwrap();
        let g = ekg_to_goced(&dump).unwrap();
        assert_eq!(g.endurants().count(), 1);
        assert_eq!(g.events().count(), 0);
    }

    #[test]
    fn event_without_timestamp() {
        let err = parse_ekg(b"id,label,type,timestamp\ne,Event,T,\n", b"source,target,label,qualifier\n")
            .unwrap_err();
        assert!(matches!(err, IngestError::Schema { .. }));
    }

    #[test]
    fn bad_edges() {
        let dump = parse_ekg(NODES.as_bytes(), b"source,target,label,qualifier\ne1,e2,O2O,\n").unwrap();
        assert!(matches!(ekg_to_goced(&dump), Err(IngestError::Schema { .. })));
        let dump = parse_ekg(NODES.as_bytes(), b"source,target,label,qualifier\ne1,X,E2O,\n").unwrap();
        assert!(matches!(ekg_to_goced(&dump), Err(IngestError::Schema { .. })));
        let dump = parse_ekg(NODES.as_bytes(), b"source,target,label,qualifier\nS,S,O2O,\n").unwrap();
        assert!(matches!(ekg_to_goced(&dump), Err(IngestError::Schema { .. })));
        assert!(matches!(
            parse_ekg(NODES.as_bytes(), b"source,target,label\n"),
            Err(IngestError::MissingColumn(_))
        ));
    }
}
