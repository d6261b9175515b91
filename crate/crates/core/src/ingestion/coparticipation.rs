//! Making the relation behind co-participation explicit.
//!
//! A log in which one object (the pivot) repeatedly co-occurs with others in
//! events of one type does not say whether each event replaces the previous
//! relation or extends it. Both readings are reified here as relators.

use std::collections::BTreeSet;

use super::{IdAllocator, IngestError};
use crate::model::{
    E2OKind, E2OLink, EndurantCategory, Endurant, EndurantType, EntityId, GocedGraph,
    SortalCategory, TimeInterval,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reading {
    /// Each event starts a new relation among its participants and ends the
    /// previous one.
    Replacement,
    /// A single relation accumulates the participants of all events.
    Accumulation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoParticipation {
    /// Event type whose events establish the relation.
    pub event_type: EntityId,
    /// Object taking part in every such event.
    pub pivot: EntityId,
    /// Name of the relator type to create (e.g. `Supervision`).
    pub relator_type: String,
}

/// Returns a copy of `graph` extended with relators for the given reading.
///
/// Relators are named `<relator_type>1`, `<relator_type>2`, ... in event
/// order and linked to the events that create, terminate or take part in
/// them.
pub fn reify_co_participation(
    graph: &GocedGraph,
    spec: &CoParticipation,
    reading: Reading,
) -> Result<GocedGraph, IngestError> {
    if graph.event_type(spec.event_type.as_str()).is_none() {
        return Err(IngestError::Mapping(format!("unknown event type {}", spec.event_type)));
    }
    match graph.endurant(spec.pivot.as_str()) {
        Some(e) if e.category == EndurantCategory::Object => {}
        _ => return Err(IngestError::Mapping(format!("{} is not an object", spec.pivot))),
    }

    let mut events: Vec<_> = graph
        .events_of(spec.pivot.as_str())
        .filter_map(|id| graph.event(id.as_str()))
        .filter(|e| e.type_ref == spec.event_type)
        .collect();
    events.sort_by(|a, b| (a.begin, a.end, &a.id).cmp(&(b.begin, b.end, &b.id)));
    let participants = |event: &EntityId| -> BTreeSet<EntityId> {
        graph
            .e2o_links()
            .filter(|l| &l.event == event)
            .filter(|l| {
                graph
                    .endurant(l.endurant.as_str())
                    .is_some_and(|e| e.category == EndurantCategory::Object)
            })
            .map(|l| l.endurant.clone())
            .chain(std::iter::once(spec.pivot.clone()))
            .collect()
    };

    let mut ids = IdAllocator::default();
    let existing: Vec<String> = graph
        .endurant_types()
        .map(|t| t.id.to_string())
        .chain(graph.event_types().map(|t| t.id.to_string()))
        .chain(graph.endurants().map(|e| e.id.to_string()))
        .chain(graph.events().map(|e| e.id.to_string()))
        .chain(graph.qvass().map(|q| q.id.to_string()))
        .collect();
    for id in &existing {
        ids.reserve(id);
    }

    let mut g = graph.clone();
    if events.is_empty() {
        return Ok(g);
    }
    let type_id = ids.fresh(&format!("relatorType:{}", spec.relator_type));
    g.insert(EndurantType::new(
        type_id.clone(),
        &spec.relator_type,
        SortalCategory::Unspecified,
    ))?;

    match reading {
        Reading::Replacement => {
            let mut previous: Option<EntityId> = None;
            for (i, ev) in events.iter().enumerate() {
                let id = ids.fresh(&format!("{}{}", spec.relator_type, i + 1));
                let existence = match events.get(i + 1) {
                    Some(next) => TimeInterval::closed(ev.begin, next.end),
                    None => TimeInterval::open(ev.begin),
                };
                g.insert(
                    Endurant::relator(id.clone(), type_id.clone(), participants(&ev.id))
                        .with_existence(existence),
                )?;
                g.link(E2OLink::new(ev.id.clone(), id.clone(), E2OKind::Created))?;
                if let Some(prev) = previous.take() {
                    g.link(E2OLink::new(ev.id.clone(), prev, E2OKind::Terminated))?;
                }
                previous = Some(id);
            }
        }
        Reading::Accumulation => {
            let id = ids.fresh(&format!("{}1", spec.relator_type));
            let members: BTreeSet<EntityId> =
                events.iter().flat_map(|ev| participants(&ev.id)).collect();
            g.insert(
                Endurant::relator(id.clone(), type_id, members)
                    .with_existence(TimeInterval::open(events[0].begin)),
            )?;
            g.link(E2OLink::new(events[0].id.clone(), id.clone(), E2OKind::Created))?;
            for ev in &events[1..] {
                g.link(E2OLink::new(ev.id.clone(), id.clone(), E2OKind::Participated))?;
            }
        }
    }
    Ok(g)
}
