//! Flat event tables: `event_id,event_type,timestamp,related_objects`, with
//! related object ids separated by `;`.

use std::collections::{BTreeMap, BTreeSet};

use super::{IdAllocator, IngestError};
use crate::model::{
    E2OKind, E2OLink, Endurant, EndurantType, EntityId, Event, EventType, GocedGraph,
    SortalCategory, TimePoint,
};

pub const COLUMNS: [&str; 4] = ["event_id", "event_type", "timestamp", "related_objects"];
const DEFAULT_OBJECT_TYPE: &str = "Object";

struct Row {
    line: u64,
    event_id: String,
    event_type: String,
    time: TimePoint,
    objects: Vec<String>,
}

fn csv_error(err: csv::Error) -> IngestError {
    let location = err
        .position()
        .map_or_else(|| "input".to_string(), |p| format!("line {}", p.line()));
    IngestError::Syntax {
        location,
        message: err.to_string(),
    }
}

/// Reads an event table. Every row becomes an atomic event; every related
/// object id becomes an object (typed `Object`) on first sight, linked to
/// the event as a participant.
pub fn parse_event_table(csv_bytes: &[u8]) -> Result<GocedGraph, IngestError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(csv_bytes);
    let headers = reader.headers().map_err(csv_error)?.clone();
    let mut column = BTreeMap::new();
    for name in COLUMNS {
        let idx = headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| IngestError::MissingColumn(name.to_string()))?;
        column.insert(name, idx);
    }

    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(csv_error)?;
        let line = record.position().map_or(0, |p| p.line());
        let field = |name: &str| record.get(column[name]).unwrap_or("").to_string();
        let event_id = field("event_id");
        if event_id.is_empty() {
            return Err(IngestError::schema(format!("line {line}"), "empty event_id"));
        }
        let event_type = field("event_type");
        if event_type.is_empty() {
            return Err(IngestError::schema(format!("line {line}"), "empty event_type"));
        }
        let time = TimePoint::parse(&field("timestamp")).map_err(|e| IngestError::Syntax {
            location: format!("line {line}"),
            message: e.to_string(),
        })?;
        let objects = field("related_objects")
            .split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(str::to_string)
            .collect();
        rows.push(Row {
            line,
            event_id,
            event_type,
            time,
            objects,
        });
    }

    let mut ids = IdAllocator::default();
    let mut event_ids = BTreeSet::new();
    for row in &rows {
        if !event_ids.insert(row.event_id.as_str()) || !ids.reserve(&row.event_id) {
            return Err(IngestError::schema(
                format!("line {}", row.line),
                format!("duplicate event id {:?}", row.event_id),
            ));
        }
    }
    let mut object_ids = BTreeSet::new();
    for row in &rows {
        for o in &row.objects {
            if event_ids.contains(o.as_str()) {
                return Err(IngestError::schema(
                    format!("line {}", row.line),
                    format!("object id {o:?} is also an event id"),
                ));
            }
            if object_ids.insert(o.as_str()) {
                ids.reserve(o);
            }
        }
    }

    let mut g = GocedGraph::new();
    let mut object_type: Option<EntityId> = None;
    let mut event_types: BTreeMap<&str, EntityId> = BTreeMap::new();
    let mut seen_objects = BTreeSet::new();
    for row in &rows {
        let type_id = match event_types.get(row.event_type.as_str()) {
            Some(id) => id.clone(),
            None => {
                let id = ids.fresh(&format!("eventType:{}", row.event_type));
                g.insert(EventType::new(id.clone(), &row.event_type))?;
                event_types.insert(&row.event_type, id.clone());
                id
            }
        };
        g.insert(Event::instant(row.event_id.as_str(), type_id, row.time))?;
        for o in &row.objects {
            if seen_objects.insert(o.as_str()) {
                let ot = match &object_type {
                    Some(id) => id.clone(),
                    None => {
                        let id = ids.fresh(&format!("objectType:{DEFAULT_OBJECT_TYPE}"));
                        g.insert(EndurantType::new(
                            id.clone(),
                            DEFAULT_OBJECT_TYPE,
                            SortalCategory::Unspecified,
                        ))?;
                        object_type = Some(id.clone());
                        id
                    }
                };
                g.insert(Endurant::object(o.as_str(), ot))?;
            }
            g.link(E2OLink::new(row.event_id.as_str(), o.as_str(), E2OKind::Participated))?;
        }
    }
    Ok(g)
}
