//! OCEL 2.0 JSON.

use std::collections::{BTreeMap, BTreeSet};

use super::{IdAllocator, IngestError, MappingConfig};
use crate::model::{
    E2OLink, Endurant, EndurantType, EntityId, Event, EventType, GocedGraph, Qvas,
    QvasEventKind, QvasEventLink, Scalar, SortalCategory, TimeInterval, TimePoint,
};

#[derive(Debug, Clone, PartialEq)]
pub struct OcelLog {
    pub object_types: Vec<OcelType>,
    pub event_types: Vec<OcelType>,
    pub objects: Vec<OcelObject>,
    pub events: Vec<OcelEvent>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OcelType {
    pub name: String,
    pub attributes: Vec<OcelAttributeDecl>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OcelAttributeDecl {
    pub name: String,
    pub value_type: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OcelObject {
    pub id: String,
    pub object_type: String,
    /// Entries without a time are static.
    pub attributes: Vec<OcelObjectAttribute>,
    pub relationships: Vec<OcelRelationship>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OcelObjectAttribute {
    pub name: String,
    pub value: Scalar,
    pub time: Option<TimePoint>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OcelRelationship {
    pub object_id: String,
    pub qualifier: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OcelEvent {
    pub id: String,
    pub event_type: String,
    pub time: TimePoint,
    pub attributes: Vec<(String, Scalar)>,
    pub relationships: Vec<OcelRelationship>,
}

mod raw {
    use serde::Deserialize;

    #[derive(Deserialize)]
    #[serde(rename_all = "camelCase")]
    pub struct Log {
        #[serde(default)]
        pub object_types: Vec<Type>,
        #[serde(default)]
        pub event_types: Vec<Type>,
        #[serde(default)]
        pub objects: Vec<Object>,
        #[serde(default)]
        pub events: Vec<Event>,
    }

    #[derive(Deserialize)]
    pub struct Type {
        pub name: String,
        #[serde(default)]
        pub attributes: Vec<AttributeDecl>,
    }

    #[derive(Deserialize)]
    pub struct AttributeDecl {
        pub name: String,
        #[serde(rename = "type", default)]
        pub value_type: String,
    }

    #[derive(Deserialize)]
    pub struct Object {
        pub id: String,
        #[serde(rename = "type")]
        pub object_type: String,
        #[serde(default)]
        pub attributes: Vec<Attribute>,
        #[serde(default)]
        pub relationships: Vec<Relationship>,
    }

    #[derive(Deserialize)]
    pub struct Event {
        pub id: String,
        #[serde(rename = "type")]
        pub event_type: String,
        pub time: String,
        #[serde(default)]
        pub attributes: Vec<Attribute>,
        #[serde(default)]
        pub relationships: Vec<Relationship>,
    }

    #[derive(Deserialize)]
    pub struct Attribute {
        pub name: String,
        pub value: serde_json::Value,
        #[serde(default)]
        pub time: Option<String>,
    }

    #[derive(Deserialize)]
    #[serde(rename_all = "camelCase")]
    pub struct Relationship {
        pub object_id: String,
        #[serde(default)]
        pub qualifier: String,
        #[serde(flatten)]
        pub extra: serde_json::Map<String, serde_json::Value>,
    }
}

fn scalar(value: &serde_json::Value, path: &str) -> Result<Scalar, IngestError> {
    use serde_json::Value;
    match value {
        Value::String(s) => Ok(Scalar::Str(s.clone())),
        Value::Bool(b) => Ok(Scalar::Bool(*b)),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Scalar::Int(i)),
            None => n
                .as_f64()
                .map(Scalar::Float)
                .ok_or_else(|| IngestError::schema(path, "number out of range")),
        },
        Value::Null => Err(IngestError::schema(path, "null attribute value")),
        Value::Array(_) | Value::Object(_) => {
            Err(IngestError::schema(path, "nested attribute values are not supported"))
        }
    }
}

fn time(value: &str, path: &str) -> Result<TimePoint, IngestError> {
    TimePoint::parse(value).map_err(|e| IngestError::schema(path, e.to_string()))
}

fn relationships(
    raw: Vec<raw::Relationship>,
    owner: &str,
    path: &str,
) -> Vec<OcelRelationship> {
    raw.into_iter()
        .enumerate()
        .map(|(i, r)| {
            if !r.extra.is_empty() {
                let keys: Vec<&str> = r.extra.keys().map(String::as_str).collect();
                log::warn!(
                    "{path}[{i}] of {owner}: ignoring unsupported relationship fields {keys:?}"
                );
            }
            OcelRelationship {
                object_id: r.object_id,
                qualifier: r.qualifier,
            }
        })
        .collect()
}

/// Parses and structurally validates an OCEL 2.0 JSON document.
pub fn parse_ocel2(text: &[u8]) -> Result<OcelLog, IngestError> {
    let value: serde_json::Value =
        serde_json::from_slice(text).map_err(|e| IngestError::Syntax {
            location: format!("line {}, column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
    let raw: raw::Log = serde_path_to_error::deserialize(value).map_err(|e| {
        IngestError::schema(e.path().to_string(), e.inner().to_string())
    })?;

    let decl = |types: Vec<raw::Type>, what: &str| -> Result<Vec<OcelType>, IngestError> {
        let mut seen = BTreeSet::new();
        types
            .into_iter()
            .enumerate()
            .map(|(i, t)| {
                if t.name.is_empty() {
                    return Err(IngestError::schema(format!("{what}[{i}].name"), "empty type name"));
                }
                if !seen.insert(t.name.clone()) {
                    return Err(IngestError::schema(
                        format!("{what}[{i}].name"),
                        format!("type {:?} declared twice", t.name),
                    ));
                }
                Ok(OcelType {
                    name: t.name,
                    attributes: t
                        .attributes
                        .into_iter()
                        .map(|a| OcelAttributeDecl {
                            name: a.name,
                            value_type: a.value_type,
                        })
                        .collect(),
                })
            })
            .collect()
    };
    let object_types = decl(raw.object_types, "objectTypes")?;
    let event_types = decl(raw.event_types, "eventTypes")?;
    let object_type_names: BTreeSet<&str> = object_types.iter().map(|t| t.name.as_str()).collect();
    let event_type_names: BTreeSet<&str> = event_types.iter().map(|t| t.name.as_str()).collect();

    let mut object_ids = BTreeSet::new();
    for (i, o) in raw.objects.iter().enumerate() {
        if o.id.is_empty() {
            return Err(IngestError::schema(format!("objects[{i}].id"), "empty id"));
        }
        if !object_ids.insert(o.id.clone()) {
            return Err(IngestError::schema(
                format!("objects[{i}].id"),
                format!("duplicate object id {:?}", o.id),
            ));
        }
    }

    let mut objects = Vec::with_capacity(raw.objects.len());
    for (i, o) in raw.objects.into_iter().enumerate() {
        let path = format!("objects[{i}]");
        if !object_type_names.contains(o.object_type.as_str()) {
            return Err(IngestError::schema(
                format!("{path}.type"),
                format!("undeclared object type {:?}", o.object_type),
            ));
        }
        let mut attributes = Vec::with_capacity(o.attributes.len());
        for (j, a) in o.attributes.into_iter().enumerate() {
            let apath = format!("{path}.attributes[{j}]");
            attributes.push(OcelObjectAttribute {
                value: scalar(&a.value, &format!("{apath}.value"))?,
                time: a
                    .time
                    .as_deref()
                    .map(|t| time(t, &format!("{apath}.time")))
                    .transpose()?,
                name: a.name,
            });
        }
        let rels = relationships(o.relationships, &o.id, &format!("{path}.relationships"));
        for (j, r) in rels.iter().enumerate() {
            let rpath = format!("{path}.relationships[{j}].objectId");
            if !object_ids.contains(&r.object_id) {
                return Err(IngestError::schema(
                    rpath,
                    format!("unknown object {:?}", r.object_id),
                ));
            }
            if r.object_id == o.id {
                return Err(IngestError::schema(rpath, "object related to itself"));
            }
        }
        objects.push(OcelObject {
            id: o.id,
            object_type: o.object_type,
            attributes,
            relationships: rels,
        });
    }

    let mut event_ids = BTreeSet::new();
    let mut events = Vec::with_capacity(raw.events.len());
    for (i, e) in raw.events.into_iter().enumerate() {
        let path = format!("events[{i}]");
        if e.id.is_empty() {
            return Err(IngestError::schema(format!("{path}.id"), "empty id"));
        }
        if !event_ids.insert(e.id.clone()) {
            return Err(IngestError::schema(
                format!("{path}.id"),
                format!("duplicate event id {:?}", e.id),
            ));
        }
        if object_ids.contains(&e.id) {
            return Err(IngestError::schema(
                format!("{path}.id"),
                format!("event id {:?} is also an object id", e.id),
            ));
        }
        if !event_type_names.contains(e.event_type.as_str()) {
            return Err(IngestError::schema(
                format!("{path}.type"),
                format!("undeclared event type {:?}", e.event_type),
            ));
        }
        let mut attributes = Vec::with_capacity(e.attributes.len());
        for (j, a) in e.attributes.into_iter().enumerate() {
            attributes.push((
                a.name,
                scalar(&a.value, &format!("{path}.attributes[{j}].value"))?,
            ));
        }
        let rels = relationships(e.relationships, &e.id, &format!("{path}.relationships"));
        for (j, r) in rels.iter().enumerate() {
            if !object_ids.contains(&r.object_id) {
                return Err(IngestError::schema(
                    format!("{path}.relationships[{j}].objectId"),
                    format!("unknown object {:?}", r.object_id),
                ));
            }
        }
        events.push(OcelEvent {
            time: time(&e.time, &format!("{path}.time"))?,
            id: e.id,
            event_type: e.event_type,
            attributes,
            relationships: rels,
        });
    }

    Ok(OcelLog {
        object_types,
        event_types,
        objects,
        events,
    })
}

/// Lifts a parsed log into a graph.
pub fn ocel_to_goced(log: &OcelLog, config: &MappingConfig) -> Result<GocedGraph, IngestError> {
    let mut ids = IdAllocator::default();
    for id in log.objects.iter().map(|o| &o.id).chain(log.events.iter().map(|e| &e.id)) {
        if !ids.reserve(id) {
            return Err(IngestError::Mapping(format!("id {id:?} used twice")));
        }
    }
    let mut g = GocedGraph::new();

    let mut object_type_ids = BTreeMap::new();
    for t in &log.object_types {
        let id = ids.fresh(&format!("objectType:{}", t.name));
        g.insert(EndurantType::new(id.clone(), &t.name, SortalCategory::Unspecified))?;
        object_type_ids.insert(t.name.as_str(), id);
    }
    let mut event_type_ids = BTreeMap::new();
    for t in &log.event_types {
        let id = ids.fresh(&format!("eventType:{}", t.name));
        g.insert(EventType::new(id.clone(), &t.name))?;
        event_type_ids.insert(t.name.as_str(), id);
    }
    let mut quality_type_ids: BTreeMap<&str, EntityId> = BTreeMap::new();
    let mut relator_type_ids: BTreeMap<&str, EntityId> = BTreeMap::new();
    for o in &log.objects {
        for a in &o.attributes {
            if !quality_type_ids.contains_key(a.name.as_str()) {
                let name = if a.name.is_empty() { "attribute" } else { &a.name };
                let id = ids.fresh(&format!("qualityType:{name}"));
                g.insert(EndurantType::new(id.clone(), name, SortalCategory::Unspecified))?;
                quality_type_ids.insert(&a.name, id);
            }
        }
        for r in &o.relationships {
            if !relator_type_ids.contains_key(r.qualifier.as_str()) {
                let name = config.relator_type_name(&r.qualifier);
                let id = ids.fresh(&format!("relatorType:{name}"));
                g.insert(EndurantType::new(id.clone(), name, SortalCategory::Unspecified))?;
                relator_type_ids.insert(&r.qualifier, id);
            }
        }
    }

    let lookup = |map: &BTreeMap<&str, EntityId>, key: &str| {
        map.get(key)
            .cloned()
            .ok_or_else(|| IngestError::Mapping(format!("undeclared type {key:?}")))
    };

    for o in &log.objects {
        g.insert(Endurant::object(o.id.as_str(), lookup(&object_type_ids, &o.object_type)?))?;
    }
    for e in &log.events {
        let mut event = Event::instant(e.id.as_str(), lookup(&event_type_ids, &e.event_type)?, e.time);
        for (name, value) in &e.attributes {
            event.attributes.insert(name.clone(), value.clone());
        }
        g.insert(event)?;
        for r in &e.relationships {
            g.link(E2OLink::new(e.id.as_str(), r.object_id.as_str(), config.e2o_kind(&r.qualifier)))?;
        }
    }

    let event_times: BTreeMap<&str, TimePoint> =
        log.events.iter().map(|e| (e.id.as_str(), e.time)).collect();

    for o in &log.objects {
        // attribute name -> (static value, observations by time)
        let mut grouped: Vec<(&str, Option<&Scalar>, BTreeMap<TimePoint, &Scalar>)> = Vec::new();
        for a in &o.attributes {
            let slot = match grouped.iter().position(|(n, _, _)| *n == a.name) {
                Some(i) => i,
                None => {
                    grouped.push((&a.name, None, BTreeMap::new()));
                    grouped.len() - 1
                }
            };
            match a.time {
                None => grouped[slot].1 = Some(&a.value),
                Some(t) => {
                    grouped[slot].2.insert(t, &a.value);
                }
            }
        }
        for (name, static_value, timed) in grouped {
            let quality_id = ids.fresh(&format!("{}/{}", o.id, name));
            let mut quality =
                Endurant::quality(quality_id.clone(), lookup(&quality_type_ids, name)?, o.id.as_str())
                    .with_label(name);
            if let Some(v) = static_value {
                quality = quality.with_value(v.clone());
            }
            g.insert(quality)?;
            let chain: Vec<(&TimePoint, &&Scalar)> = timed.iter().collect();
            for (k, (begin, value)) in chain.iter().enumerate() {
                let validity = match chain.get(k + 1) {
                    Some((next, _)) => TimeInterval::closed(**begin, **next),
                    None => TimeInterval::open(**begin),
                };
                let qvas_id = ids.fresh(&format!("{quality_id}@{k}"));
                g.insert(Qvas::new(qvas_id.clone(), quality_id.clone(), (**value).clone(), validity))?;
                if config.link_attribute_changes {
                    let causes: Vec<EntityId> = g
                        .events_of(&o.id)
                        .filter(|ev| event_times.get(ev.as_str()) == Some(*begin))
                        .cloned()
                        .collect();
                    for ev in causes {
                        g.link(QvasEventLink::new(ev, qvas_id.clone(), QvasEventKind::BroughtAbout))?;
                    }
                }
            }
        }
    }

    for o in &log.objects {
        for r in &o.relationships {
            let relator_id = ids.fresh(&format!("{}~{}~{}", o.id, r.qualifier, r.object_id));
            let relator = Endurant::relator(
                relator_id,
                lookup(&relator_type_ids, &r.qualifier)?,
                [o.id.as_str(), r.object_id.as_str()],
            )
            .with_label(r.qualifier.as_str());
            g.insert(relator)?;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{E2OKind, EndurantCategory};

    const MINIMAL: &str = r#"{
        "objectTypes": [{"name": "Order", "attributes": []}],
        "eventTypes": [{"name": "place", "attributes": []}],
        "objects": [{"id": "o1", "type": "Order"}],
        "events": [{"id": "e1", "type": "place", "time": "2024-01-01T00:00:00Z",
                    "relationships": [{"objectId": "o1", "qualifier": "create"}]}]
    }"#;

    #[test]
    fn minimal_log() {
        let log = parse_ocel2(MINIMAL.as_bytes()).unwrap();
        assert_eq!(log.object_types.len(), 1);
        assert_eq!(log.event_types.len(), 1);
        assert_eq!(log.objects.len(), 1);
        assert_eq!(log.events.len(), 1);
        assert_eq!(log.events[0].relationships.len(), 1);
        let g = ocel_to_goced(&log, &MappingConfig::default()).unwrap();
        let link = g.e2o_links().next().unwrap();
        assert_eq!(link.kind, E2OKind::Created);
        assert_eq!(g.is_atomic("e1"), Ok(true));
    }

    #[test]
    fn undeclared_object_is_schema_error() {
        let text = MINIMAL.replace(r#""objectId": "o1""#, r#""objectId": "ghost""#);
        let err = parse_ocel2(text.as_bytes()).unwrap_err();
        assert!(matches!(err, IngestError::Schema { ref path, .. } if path == "events[0].relationships[0].objectId"), "{err}");
    }

    #[test]
    fn syntax_and_shape_errors() {
        assert!(matches!(parse_ocel2(b"{\"objects\": ["), Err(IngestError::Syntax { .. })));
        let err = parse_ocel2(br#"{"objects": [{"id": 3, "type": "x"}]}"#).unwrap_err();
        assert!(matches!(err, IngestError::Schema { ref path, .. } if path.starts_with("objects[0]")), "{err}");
        let bad_time = MINIMAL.replace("2024-01-01T00:00:00Z", "soon");
        assert!(matches!(parse_ocel2(bad_time.as_bytes()), Err(IngestError::Schema { .. })));
        let null_attr = MINIMAL.replace(
            r#""type": "Order"}"#,
            r#""type": "Order", "attributes": [{"name": "a", "value": null}]}"#,
        );
        assert!(matches!(parse_ocel2(null_attr.as_bytes()), Err(IngestError::Schema { .. })));
    }

    #[test]
    fn empty_log_maps_to_empty_graph() {
        let log = parse_ocel2(b"{}").unwrap();
        let g = ocel_to_goced(&log, &MappingConfig::default()).unwrap();
        assert!(g.is_empty());
        assert_eq!(g.link_count(), 0);
    }

    #[test]
    fn extra_relationship_fields_are_ignored() {
        let text = r#"{
            "objectTypes": [{"name": "P"}],
            "objects": [
                {"id": "a", "type": "P", "relationships": [{"objectId": "b", "qualifier": "knows", "validFrom": "2020-01-01"}]},
                {"id": "b", "type": "P"}
            ]
        }"#;
        let log = parse_ocel2(text.as_bytes()).unwrap();
        let g = ocel_to_goced(&log, &MappingConfig::default()).unwrap();
        let relator = g
            .endurants()
            .find(|e| e.category == EndurantCategory::Relator)
            .unwrap();
        assert!(relator.existence.is_none());
        assert_eq!(relator.mediates.len(), 2);
        assert_eq!(g.endurant_type(relator.type_ref.as_str()).unwrap().name, "knows");
    }

    #[test]
    fn self_relation_rejected() {
        let text = r#"{"objectTypes": [{"name": "P"}],
            "objects": [{"id": "a", "type": "P", "relationships": [{"objectId": "a", "qualifier": "x"}]}]}"#;
        assert!(matches!(parse_ocel2(text.as_bytes()), Err(IngestError::Schema { .. })));
    }

    #[test]
    fn synthesized_ids_avoid_log_ids() {
        let text = r#"{"objectTypes": [{"name": "P"}],
            "eventTypes": [{"name": "x"}],
            "objects": [{"id": "objectType:P", "type": "P"}],
            "events": [{"id": "eventType:x", "type": "x", "time": "2024-01-01T00:00:00Z"}]}"#;
        let g = ocel_to_goced(&parse_ocel2(text.as_bytes()).unwrap(), &MappingConfig::default())
            .unwrap();
        assert!(g.endurant_type("objectType:P~2").is_some());
        assert!(g.event("eventType:x").is_some());
    }
}
