use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::time::{TimeInterval, TimePoint};

/// Identifier of any element in a [`GocedGraph`](super::GocedGraph).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EntityId(String);

impl EntityId {
    pub fn new(value: impl Into<String>) -> Self {
        EntityId(value.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for EntityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for EntityId {
    fn from(value: &str) -> Self {
        EntityId(value.to_string())
    }
}

impl From<String> for EntityId {
    fn from(value: String) -> Self {
        EntityId(value)
    }
}

impl AsRef<str> for EntityId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl std::borrow::Borrow<str> for EntityId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

/// Attribute values. Nested values are not supported.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Bool(bool),
    Int(i64),
    Float(f64),
    Str(String),
}

impl Scalar {
    pub fn is_finite(&self) -> bool {
        match self {
            Scalar::Float(f) => f.is_finite(),
            _ => true,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Bool(b) => write!(f, "{b}"),
            Scalar::Int(i) => write!(f, "{i}"),
            Scalar::Float(x) => write!(f, "{x:?}"),
            Scalar::Str(s) => f.write_str(s),
        }
    }
}

impl From<&str> for Scalar {
    fn from(value: &str) -> Self {
        Scalar::Str(value.to_string())
    }
}

impl From<String> for Scalar {
    fn from(value: String) -> Self {
        Scalar::Str(value)
    }
}

impl From<i64> for Scalar {
    fn from(value: i64) -> Self {
        Scalar::Int(value)
    }
}

impl From<f64> for Scalar {
    fn from(value: f64) -> Self {
        Scalar::Float(value)
    }
}

impl From<bool> for Scalar {
    fn from(value: bool) -> Self {
        Scalar::Bool(value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum SortalCategory {
    Kind,
    Phase,
    Role,
    Unspecified,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndurantType {
    pub id: EntityId,
    pub name: String,
    pub sortal: SortalCategory,
}

impl EndurantType {
    pub fn new(id: impl Into<EntityId>, name: impl Into<String>, sortal: SortalCategory) -> Self {
        EndurantType {
            id: id.into(),
            name: name.into(),
            sortal,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventType {
    pub id: EntityId,
    pub name: String,
}

impl EventType {
    pub fn new(id: impl Into<EntityId>, name: impl Into<String>) -> Self {
        EventType {
            id: id.into(),
            name: name.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum EndurantCategory {
    Object,
    Quality,
    Relator,
}

impl fmt::Display for EndurantCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EndurantCategory::Object => "object",
            EndurantCategory::Quality => "quality",
            EndurantCategory::Relator => "relator",
        })
    }
}

/// A time-persistent individual: an object, one of its qualities, or a
/// relator connecting other endurants.
#[derive(Debug, Clone, PartialEq)]
pub struct Endurant {
    pub id: EntityId,
    pub type_ref: EntityId,
    pub category: EndurantCategory,
    pub label: Option<String>,
    pub existence: Option<TimeInterval>,
    /// Host of a quality.
    pub inheres_in: Option<EntityId>,
    /// Endurants connected by a relator.
    pub mediates: BTreeSet<EntityId>,
    pub static_value: Option<Scalar>,
}

impl Endurant {
    fn bare(id: EntityId, type_ref: EntityId, category: EndurantCategory) -> Self {
        Endurant {
            id,
            type_ref,
            category,
            label: None,
            existence: None,
            inheres_in: None,
            mediates: BTreeSet::new(),
            static_value: None,
        }
    }

    pub fn object(id: impl Into<EntityId>, type_ref: impl Into<EntityId>) -> Self {
        Endurant::bare(id.into(), type_ref.into(), EndurantCategory::Object)
    }

    pub fn quality(
        id: impl Into<EntityId>,
        type_ref: impl Into<EntityId>,
        host: impl Into<EntityId>,
    ) -> Self {
        let mut e = Endurant::bare(id.into(), type_ref.into(), EndurantCategory::Quality);
        e.inheres_in = Some(host.into());
        e
    }

    pub fn relator<I, T>(id: impl Into<EntityId>, type_ref: impl Into<EntityId>, mediates: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<EntityId>,
    {
        let mut e = Endurant::bare(id.into(), type_ref.into(), EndurantCategory::Relator);
        e.mediates = mediates.into_iter().map(Into::into).collect();
        e
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn with_existence(mut self, existence: TimeInterval) -> Self {
        self.existence = Some(existence);
        self
    }

    pub fn with_value(mut self, value: impl Into<Scalar>) -> Self {
        self.static_value = Some(value.into());
        self
    }
}

/// Quality value attribution situation: a quality holding `value` during
/// `validity` (half-open).
#[derive(Debug, Clone, PartialEq)]
pub struct Qvas {
    pub id: EntityId,
    pub quality_ref: EntityId,
    pub value: Scalar,
    pub validity: TimeInterval,
}

impl Qvas {
    pub fn new(
        id: impl Into<EntityId>,
        quality_ref: impl Into<EntityId>,
        value: impl Into<Scalar>,
        validity: TimeInterval,
    ) -> Self {
        Qvas {
            id: id.into(),
            quality_ref: quality_ref.into(),
            value: value.into(),
            validity,
        }
    }
}

/// An occurrence with a closed interval. Attributes are fixed at insertion.
#[derive(Debug, Clone, PartialEq)]
pub struct Event {
    pub id: EntityId,
    pub type_ref: EntityId,
    pub begin: TimePoint,
    pub end: TimePoint,
    pub attributes: BTreeMap<String, Scalar>,
}

impl Event {
    pub fn new(
        id: impl Into<EntityId>,
        type_ref: impl Into<EntityId>,
        begin: TimePoint,
        end: TimePoint,
    ) -> Self {
        Event {
            id: id.into(),
            type_ref: type_ref.into(),
            begin,
            end,
            attributes: BTreeMap::new(),
        }
    }

    pub fn instant(id: impl Into<EntityId>, type_ref: impl Into<EntityId>, at: TimePoint) -> Self {
        Event::new(id, type_ref, at, at)
    }

    pub fn with_attribute(mut self, name: impl Into<String>, value: impl Into<Scalar>) -> Self {
        self.attributes.insert(name.into(), value.into());
        self
    }

    pub fn interval(&self) -> TimeInterval {
        TimeInterval::closed(self.begin, self.end)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum E2OKind {
    Created,
    Terminated,
    Participated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum E2EKind {
    ProperPartOf,
    HistoricallyDependsOn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QvasEventKind {
    BroughtAbout,
    ContributedToTrigger,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct E2OLink {
    pub event: EntityId,
    pub endurant: EntityId,
    pub kind: E2OKind,
}

/// Event-to-event link. For `ProperPartOf`, `source` is the part; for
/// `HistoricallyDependsOn`, `source` is the dependent event.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct E2ELink {
    pub source: EntityId,
    pub target: EntityId,
    pub kind: E2EKind,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QvasEventLink {
    pub event: EntityId,
    pub qvas: EntityId,
    pub kind: QvasEventKind,
}

impl E2OLink {
    pub fn new(event: impl Into<EntityId>, endurant: impl Into<EntityId>, kind: E2OKind) -> Self {
        E2OLink {
            event: event.into(),
            endurant: endurant.into(),
            kind,
        }
    }
}

impl E2ELink {
    pub fn part_of(part: impl Into<EntityId>, whole: impl Into<EntityId>) -> Self {
        E2ELink {
            source: part.into(),
            target: whole.into(),
            kind: E2EKind::ProperPartOf,
        }
    }

    pub fn depends_on(dependent: impl Into<EntityId>, dependee: impl Into<EntityId>) -> Self {
        E2ELink {
            source: dependent.into(),
            target: dependee.into(),
            kind: E2EKind::HistoricallyDependsOn,
        }
    }
}

impl QvasEventLink {
    pub fn new(event: impl Into<EntityId>, qvas: impl Into<EntityId>, kind: QvasEventKind) -> Self {
        QvasEventLink {
            event: event.into(),
            qvas: qvas.into(),
            kind,
        }
    }
}

/// Anything with its own identity that can be inserted into a graph.
#[derive(Debug, Clone, PartialEq)]
pub enum Element {
    EndurantType(EndurantType),
    EventType(EventType),
    Endurant(Endurant),
    Qvas(Qvas),
    Event(Event),
}

impl Element {
    pub fn id(&self) -> &EntityId {
        match self {
            Element::EndurantType(t) => &t.id,
            Element::EventType(t) => &t.id,
            Element::Endurant(e) => &e.id,
            Element::Qvas(q) => &q.id,
            Element::Event(e) => &e.id,
        }
    }

    /// Ids this element refers to; all must already be in the graph.
    pub fn references(&self) -> Vec<&EntityId> {
        match self {
            Element::EndurantType(_) | Element::EventType(_) => Vec::new(),
            Element::Endurant(e) => std::iter::once(&e.type_ref)
                .chain(e.inheres_in.iter())
                .chain(e.mediates.iter())
                .collect(),
            Element::Qvas(q) => vec![&q.quality_ref],
            Element::Event(e) => vec![&e.type_ref],
        }
    }
}

macro_rules! element_from {
    ($($variant:ident),*) => {
        $(impl From<$variant> for Element {
            fn from(value: $variant) -> Self {
                Element::$variant(value)
            }
        })*
    };
}

element_from!(EndurantType, EventType, Endurant, Qvas, Event);

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Link {
    E2O(E2OLink),
    E2E(E2ELink),
    QvasEvent(QvasEventLink),
}

impl From<E2OLink> for Link {
    fn from(value: E2OLink) -> Self {
        Link::E2O(value)
    }
}

impl From<E2ELink> for Link {
    fn from(value: E2ELink) -> Self {
        Link::E2E(value)
    }
}

impl From<QvasEventLink> for Link {
    fn from(value: QvasEventLink) -> Self {
        Link::QvasEvent(value)
    }
}

/// What an id denotes inside a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ElementKind {
    EndurantType,
    EventType,
    Endurant(EndurantCategory),
    Qvas,
    Event,
}
