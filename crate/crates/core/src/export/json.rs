//! Canonical JSON: a deterministic document with sorted arrays and fixed
//! key order, suitable for diffing and byte-level comparison.

use serde::{Deserialize, Serialize};

use super::ExportError;
use crate::model::{
    E2EKind, E2ELink, E2OKind, E2OLink, Element, Endurant, EndurantCategory, EndurantType,
    EntityId, Event, EventType, GocedGraph, Link, Qvas, QvasEventKind, QvasEventLink, Scalar,
    SortalCategory, TimeInterval, TimePoint,
};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct Document {
    endurant_types: Vec<TypeDoc>,
    event_types: Vec<EventTypeDoc>,
    endurants: Vec<EndurantDoc>,
    events: Vec<EventDoc>,
    qvas: Vec<QvasDoc>,
    links: Vec<LinkDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TypeDoc {
    id: EntityId,
    name: String,
    sortal: SortalCategory,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EventTypeDoc {
    id: EntityId,
    name: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IntervalDoc {
    begin: TimePoint,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    end: Option<TimePoint>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct EndurantDoc {
    category: EndurantCategory,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    existence: Option<IntervalDoc>,
    id: EntityId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    inheres_in: Option<EntityId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeSet::is_empty")]
    mediates: BTreeSet<EntityId>,
    #[serde(rename = "type")]
    type_ref: EntityId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    value: Option<Scalar>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EventDoc {
    attributes: BTreeMap<String, Scalar>,
    begin: TimePoint,
    end: TimePoint,
    id: EntityId,
    #[serde(rename = "type")]
    type_ref: EntityId,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QvasDoc {
    begin: TimePoint,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    end: Option<TimePoint>,
    id: EntityId,
    quality: EntityId,
    value: Scalar,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, PartialOrd, Ord)]
#[serde(rename_all = "camelCase")]
enum LinkKind {
    Created,
    Terminated,
    Participated,
    ProperPartOf,
    HistoricallyDependsOn,
    BroughtAbout,
    ContributedToTrigger,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, PartialOrd, Ord)]
#[serde(deny_unknown_fields)]
struct LinkDoc {
    kind: LinkKind,
    source: EntityId,
    target: EntityId,
}

impl From<Link> for LinkDoc {
    fn from(link: Link) -> Self {
        let (kind, source, target) = match link {
            Link::E2O(l) => {
                let kind = match l.kind {
                    E2OKind::Created => LinkKind::Created,
                    E2OKind::Terminated => LinkKind::Terminated,
                    E2OKind::Participated => LinkKind::Participated,
                };
                (kind, l.endurant, l.event)
            }
            Link::E2E(l) => {
                let kind = match l.kind {
                    E2EKind::ProperPartOf => LinkKind::ProperPartOf,
                    E2EKind::HistoricallyDependsOn => LinkKind::HistoricallyDependsOn,
                };
                (kind, l.source, l.target)
            }
            Link::QvasEvent(l) => match l.kind {
                QvasEventKind::BroughtAbout => (LinkKind::BroughtAbout, l.event, l.qvas),
                QvasEventKind::ContributedToTrigger => {
                    (LinkKind::ContributedToTrigger, l.qvas, l.event)
                }
            },
        };
        LinkDoc { kind, source, target }
    }
}

impl From<LinkDoc> for Link {
    fn from(doc: LinkDoc) -> Self {
        let LinkDoc { kind, source, target } = doc;
        match kind {
            LinkKind::Created => E2OLink::new(target, source, E2OKind::Created).into(),
            LinkKind::Terminated => E2OLink::new(target, source, E2OKind::Terminated).into(),
            LinkKind::Participated => E2OLink::new(target, source, E2OKind::Participated).into(),
            LinkKind::ProperPartOf => E2ELink::part_of(source, target).into(),
            LinkKind::HistoricallyDependsOn => E2ELink::depends_on(source, target).into(),
            LinkKind::BroughtAbout => {
                QvasEventLink::new(source, target, QvasEventKind::BroughtAbout).into()
            }
            LinkKind::ContributedToTrigger => {
                QvasEventLink::new(target, source, QvasEventKind::ContributedToTrigger).into()
            }
        }
    }
}

fn interval_doc(i: &TimeInterval) -> IntervalDoc {
    IntervalDoc {
        begin: i.begin,
        end: i.end,
    }
}

/// Serializes a graph to canonical JSON. Equal graphs give identical bytes.
pub fn to_canonical_json(graph: &GocedGraph) -> Vec<u8> {
    let mut links: Vec<LinkDoc> = graph.links().map(LinkDoc::from).collect();
    links.sort();
    // element iterators already yield in id order
    let doc = Document {
        endurant_types: graph
            .endurant_types()
            .map(|t| TypeDoc {
                id: t.id.clone(),
                name: t.name.clone(),
                sortal: t.sortal,
            })
            .collect(),
        event_types: graph
            .event_types()
            .map(|t| EventTypeDoc {
                id: t.id.clone(),
                name: t.name.clone(),
            })
            .collect(),
        endurants: graph
            .endurants()
            .map(|e| EndurantDoc {
                category: e.category,
                existence: e.existence.as_ref().map(interval_doc),
                id: e.id.clone(),
                inheres_in: e.inheres_in.clone(),
                label: e.label.clone(),
                mediates: e.mediates.clone(),
                type_ref: e.type_ref.clone(),
                value: e.static_value.clone(),
            })
            .collect(),
        events: graph
            .events()
            .map(|e| EventDoc {
                attributes: e.attributes.clone(),
                begin: e.begin,
                end: e.end,
                id: e.id.clone(),
                type_ref: e.type_ref.clone(),
            })
            .collect(),
        qvas: graph
            .qvass()
            .map(|q| QvasDoc {
                begin: q.validity.begin,
                end: q.validity.end,
                id: q.id.clone(),
                quality: q.quality_ref.clone(),
                value: q.value.clone(),
            })
            .collect(),
        links,
    };
    let mut out = serde_json::to_vec(&doc).expect("graph documents always serialize");
    out.push(b'\n');
    out
}

/// Reads a canonical JSON document. Key order and array order are not
/// checked; unknown keys are rejected.
pub fn from_canonical_json(bytes: &[u8]) -> Result<GocedGraph, ExportError> {
    let doc: Document = serde_json::from_slice(bytes).map_err(|e| ExportError::Syntax {
        line: e.line(),
        message: e.to_string(),
    })?;
    let mut elements: Vec<Element> = Vec::new();
    elements.extend(
        doc.endurant_types
            .into_iter()
            .map(|t| EndurantType::new(t.id, t.name, t.sortal).into()),
    );
    elements.extend(
        doc.event_types
            .into_iter()
            .map(|t| EventType::new(t.id, t.name).into()),
    );
    elements.extend(doc.endurants.into_iter().map(|e| {
        Endurant {
            id: e.id,
            type_ref: e.type_ref,
            category: e.category,
            label: e.label,
            existence: e.existence.map(|i| TimeInterval {
                begin: i.begin,
                end: i.end,
            }),
            inheres_in: e.inheres_in,
            mediates: e.mediates,
            static_value: e.value,
        }
        .into()
    }));
    for e in doc.events {
        let mut event = Event::new(e.id, e.type_ref, e.begin, e.end);
        event.attributes = e.attributes;
        elements.push(event.into());
    }
    elements.extend(doc.qvas.into_iter().map(|q| {
        Qvas::new(
            q.id,
            q.quality,
            q.value,
            TimeInterval {
                begin: q.begin,
                end: q.end,
            },
        )
        .into()
    }));
    let mut graph = GocedGraph::with_min_mediation(1);
    graph.insert_all(elements, doc.links.into_iter().map(Link::from))?;
    Ok(graph)
}
