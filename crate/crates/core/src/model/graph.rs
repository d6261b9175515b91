use std::collections::{BTreeMap, BTreeSet};

use super::types::*;

pub const DEFAULT_MIN_MEDIATION: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("dangling reference to {0}")]
    DanglingReference(EntityId),
    #[error("duplicate id {0}")]
    DuplicateId(EntityId),
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QueryError {
    #[error("unknown id {0}")]
    UnknownId(EntityId),
    #[error("{0} is not an event")]
    NotAnEvent(EntityId),
    #[error("{0} is not an object")]
    NotAnObject(EntityId),
    #[error("{0} is not a quality")]
    NotAQuality(EntityId),
    #[error("{0} is not a relator")]
    NotARelator(EntityId),
}

/// Derived lookup tables. Always reconstructible from the primary data.
#[derive(Debug, Clone, Default, PartialEq)]
struct Indexes {
    instances_of: BTreeMap<EntityId, BTreeSet<EntityId>>,
    events_of: BTreeMap<EntityId, BTreeSet<EntityId>>,
    qvas_of: BTreeMap<EntityId, BTreeSet<EntityId>>,
    qualities_of: BTreeMap<EntityId, BTreeSet<EntityId>>,
    direct_parts: BTreeMap<EntityId, BTreeSet<EntityId>>,
}

impl Indexes {
    fn add_element(&mut self, element: &Element) {
        match element {
            Element::Endurant(e) => {
                self.instances_of
                    .entry(e.type_ref.clone())
                    .or_default()
                    .insert(e.id.clone());
                if let Some(host) = &e.inheres_in {
                    self.qualities_of
                        .entry(host.clone())
                        .or_default()
                        .insert(e.id.clone());
                }
            }
            Element::Event(e) => {
                self.instances_of
                    .entry(e.type_ref.clone())
                    .or_default()
                    .insert(e.id.clone());
            }
            Element::Qvas(q) => {
                self.qvas_of
                    .entry(q.quality_ref.clone())
                    .or_default()
                    .insert(q.id.clone());
            }
            Element::EndurantType(_) | Element::EventType(_) => {}
        }
    }

    fn add_link(&mut self, link: &Link) {
        match link {
            Link::E2O(l) => {
                self.events_of
                    .entry(l.endurant.clone())
                    .or_default()
                    .insert(l.event.clone());
            }
            Link::E2E(l) if l.kind == E2EKind::ProperPartOf => {
                self.direct_parts
                    .entry(l.target.clone())
                    .or_default()
                    .insert(l.source.clone());
            }
            Link::E2E(_) | Link::QvasEvent(_) => {}
        }
    }
}

/// In-memory instance model: typed elements, links between them, and
/// lookup indexes.
///
/// Elements can only be added, never modified or removed. Once built, a
/// graph is `Send + Sync` and all queries take `&self`.
///
/// Equality compares elements and links only; the mediation threshold is
/// a construction setting, not content.
#[derive(Debug, Clone)]
pub struct GocedGraph {
    min_mediation: usize,
    kinds: BTreeMap<EntityId, ElementKind>,
    endurant_types: BTreeMap<EntityId, EndurantType>,
    event_types: BTreeMap<EntityId, EventType>,
    endurants: BTreeMap<EntityId, Endurant>,
    qvass: BTreeMap<EntityId, Qvas>,
    events: BTreeMap<EntityId, Event>,
    e2o: BTreeSet<E2OLink>,
    e2e: BTreeSet<E2ELink>,
    qvas_links: BTreeSet<QvasEventLink>,
    index: Indexes,
}

impl PartialEq for GocedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.endurant_types == other.endurant_types
            && self.event_types == other.event_types
            && self.endurants == other.endurants
            && self.qvass == other.qvass
            && self.events == other.events
            && self.e2o == other.e2o
            && self.e2e == other.e2e
            && self.qvas_links == other.qvas_links
    }
}

impl Default for GocedGraph {
    fn default() -> Self {
        GocedGraph::new()
    }
}

impl GocedGraph {
    pub fn new() -> Self {
        GocedGraph::with_min_mediation(DEFAULT_MIN_MEDIATION)
    }

    /// A graph that accepts relators mediating at least `min_mediation`
    /// endurants. Values below 1 are raised to 1.
    pub fn with_min_mediation(min_mediation: usize) -> Self {
        GocedGraph {
            min_mediation: min_mediation.max(1),
            kinds: BTreeMap::new(),
            endurant_types: BTreeMap::new(),
            event_types: BTreeMap::new(),
            endurants: BTreeMap::new(),
            qvass: BTreeMap::new(),
            events: BTreeMap::new(),
            e2o: BTreeSet::new(),
            e2e: BTreeSet::new(),
            qvas_links: BTreeSet::new(),
            index: Indexes::default(),
        }
    }

    pub fn min_mediation(&self) -> usize {
        self.min_mediation
    }

    pub fn is_empty(&self) -> bool {
        self.kinds.is_empty()
    }

    /// Number of elements with an identity (links excluded).
    pub fn element_count(&self) -> usize {
        self.kinds.len()
    }

    pub fn link_count(&self) -> usize {
        self.e2o.len() + self.e2e.len() + self.qvas_links.len()
    }

    pub fn kind_of(&self, id: &str) -> Option<ElementKind> {
        self.kinds.get(id).copied()
    }

    pub fn contains(&self, id: &str) -> bool {
        self.kinds.contains_key(id)
    }

    pub fn endurant_types(&self) -> impl Iterator<Item = &EndurantType> {
        self.endurant_types.values()
    }

    pub fn event_types(&self) -> impl Iterator<Item = &EventType> {
        self.event_types.values()
    }

    pub fn endurants(&self) -> impl Iterator<Item = &Endurant> {
        self.endurants.values()
    }

    pub fn qvass(&self) -> impl Iterator<Item = &Qvas> {
        self.qvass.values()
    }

    pub fn events(&self) -> impl Iterator<Item = &Event> {
        self.events.values()
    }

    pub fn e2o_links(&self) -> impl Iterator<Item = &E2OLink> {
        self.e2o.iter()
    }

    pub fn e2e_links(&self) -> impl Iterator<Item = &E2ELink> {
        self.e2e.iter()
    }

    pub fn qvas_event_links(&self) -> impl Iterator<Item = &QvasEventLink> {
        self.qvas_links.iter()
    }

    /// Every link, in canonical order.
    pub fn links(&self) -> impl Iterator<Item = Link> + '_ {
        self.e2o
            .iter()
            .cloned()
            .map(Link::E2O)
            .chain(self.e2e.iter().cloned().map(Link::E2E))
            .chain(self.qvas_links.iter().cloned().map(Link::QvasEvent))
    }

    pub fn endurant_type(&self, id: &str) -> Option<&EndurantType> {
        self.endurant_types.get(id)
    }

    pub fn event_type(&self, id: &str) -> Option<&EventType> {
        self.event_types.get(id)
    }

    pub fn endurant(&self, id: &str) -> Option<&Endurant> {
        self.endurants.get(id)
    }

    pub fn qvas(&self, id: &str) -> Option<&Qvas> {
        self.qvass.get(id)
    }

    pub fn event(&self, id: &str) -> Option<&Event> {
        self.events.get(id)
    }

    pub fn require_event(&self, id: &str) -> Result<&Event, QueryError> {
        match self.events.get(id) {
            Some(e) => Ok(e),
            None if self.contains(id) => Err(QueryError::NotAnEvent(id.into())),
            None => Err(QueryError::UnknownId(id.into())),
        }
    }

    pub fn require_endurant(&self, id: &str) -> Result<&Endurant, QueryError> {
        self.endurants
            .get(id)
            .ok_or_else(|| QueryError::UnknownId(id.into()))
    }

    /// Instances (endurants or events) of a type.
    pub fn instances_of(&self, type_id: &str) -> impl Iterator<Item = &EntityId> {
        self.index.instances_of.get(type_id).into_iter().flatten()
    }

    /// Events linked to an endurant through any E2O link.
    pub fn events_of(&self, endurant: &str) -> impl Iterator<Item = &EntityId> {
        self.index.events_of.get(endurant).into_iter().flatten()
    }

    /// Qualities inhering in an endurant.
    pub fn qualities_of(&self, host: &str) -> impl Iterator<Item = &EntityId> {
        self.index.qualities_of.get(host).into_iter().flatten()
    }

    /// QVAS concerning a quality, in id order.
    pub fn qvas_of(&self, quality: &str) -> impl Iterator<Item = &EntityId> {
        self.index.qvas_of.get(quality).into_iter().flatten()
    }

    /// Name under which a quality's value is reported: its label, or else
    /// the name of its type.
    pub fn quality_name<'a>(&'a self, quality: &'a Endurant) -> &'a str {
        quality.label.as_deref().unwrap_or_else(|| {
            self.endurant_types
                .get(&quality.type_ref)
                .map_or(quality.type_ref.as_str(), |t| t.name.as_str())
        })
    }

    /// Inserts an element after checking its invariants and references.
    pub fn insert(&mut self, element: impl Into<Element>) -> Result<EntityId, GraphError> {
        let element = element.into();
        self.check_element(&element)?;
        let id = element.id().clone();
        let kind = match &element {
            Element::EndurantType(_) => ElementKind::EndurantType,
            Element::EventType(_) => ElementKind::EventType,
            Element::Endurant(e) => ElementKind::Endurant(e.category),
            Element::Qvas(_) => ElementKind::Qvas,
            Element::Event(_) => ElementKind::Event,
        };
        self.index.add_element(&element);
        self.kinds.insert(id.clone(), kind);
        match element {
            Element::EndurantType(t) => {
                self.endurant_types.insert(id.clone(), t);
            }
            Element::EventType(t) => {
                self.event_types.insert(id.clone(), t);
            }
            Element::Endurant(e) => {
                self.endurants.insert(id.clone(), e);
            }
            Element::Qvas(q) => {
                self.qvass.insert(id.clone(), q);
            }
            Element::Event(e) => {
                self.events.insert(id.clone(), e);
            }
        }
        Ok(id)
    }

    /// Adds a link. Returns `false` if the identical link was already
    /// present (duplicates are ignored).
    pub fn link(&mut self, link: impl Into<Link>) -> Result<bool, GraphError> {
        let link = link.into();
        self.check_link(&link)?;
        let added = match &link {
            Link::E2O(l) => self.e2o.insert(l.clone()),
            Link::E2E(l) => self.e2e.insert(l.clone()),
            Link::QvasEvent(l) => self.qvas_links.insert(l.clone()),
        };
        if added {
            self.index.add_link(&link);
        }
        Ok(added)
    }

    /// Inserts elements and links given in any order, resolving
    /// references by repeated passes.
    pub fn insert_all<E, L>(&mut self, elements: E, links: L) -> Result<(), GraphError>
    where
        E: IntoIterator<Item = Element>,
        L: IntoIterator<Item = Link>,
    {
        let mut pending: Vec<Element> = elements.into_iter().collect();
        while !pending.is_empty() {
            let staged: BTreeSet<&EntityId> = pending.iter().map(Element::id).collect();
            let (ready, blocked): (Vec<Element>, Vec<Element>) =
                pending.iter().cloned().partition(|el| {
                    el.references()
                        .into_iter()
                        .all(|r| self.contains(r.as_str()) || !staged.contains(r))
                });
            if ready.is_empty() {
                // Only reference cycles remain; report the first one.
                let first = &blocked[0];
                let missing = first
                    .references()
                    .into_iter()
                    .find(|r| !self.contains(r.as_str()))
                    .cloned()
                    .unwrap_or_else(|| first.id().clone());
                return Err(GraphError::DanglingReference(missing));
            }
            for el in ready {
                self.insert(el)?;
            }
            pending = blocked;
        }
        for link in links {
            self.link(link)?;
        }
        Ok(())
    }

    /// Recomputes every index from the primary data.
    pub fn rebuild_indexes(&mut self) {
        let mut index = Indexes::default();
        for e in self.endurants.values() {
            index.add_element(&Element::Endurant(e.clone()));
        }
        for e in self.events.values() {
            index.add_element(&Element::Event(e.clone()));
        }
        for q in self.qvass.values() {
            index.add_element(&Element::Qvas(q.clone()));
        }
        for link in self.links().collect::<Vec<_>>() {
            index.add_link(&link);
        }
        self.index = index;
    }

    fn require(&self, id: &EntityId) -> Result<ElementKind, GraphError> {
        self.kinds
            .get(id)
            .copied()
            .ok_or_else(|| GraphError::DanglingReference(id.clone()))
    }

    fn check_element(&self, element: &Element) -> Result<(), GraphError> {
        let id = element.id();
        if id.as_str().is_empty() {
            return Err(GraphError::InvariantViolation("empty id".into()));
        }
        if self.kinds.contains_key(id) {
            return Err(GraphError::DuplicateId(id.clone()));
        }
        let violation = |msg: String| Err(GraphError::InvariantViolation(msg));
        match element {
            Element::EndurantType(t) => {
                if t.name.is_empty() {
                    return violation(format!("endurant type {id} has an empty name"));
                }
            }
            Element::EventType(t) => {
                if t.name.is_empty() {
                    return violation(format!("event type {id} has an empty name"));
                }
            }
            Element::Endurant(e) => self.check_endurant(e)?,
            Element::Qvas(q) => {
                if self.require(&q.quality_ref)?
                    != ElementKind::Endurant(EndurantCategory::Quality)
                {
                    return violation(format!("qvas {id}: {} is not a quality", q.quality_ref));
                }
                if !q.validity.is_well_formed() {
                    return violation(format!("qvas {id}: validity ends before it begins"));
                }
                if !q.value.is_finite() {
                    return violation(format!("qvas {id}: non-finite value"));
                }
            }
            Element::Event(e) => {
                if self.require(&e.type_ref)? != ElementKind::EventType {
                    return violation(format!("event {id}: {} is not an event type", e.type_ref));
                }
                if e.begin > e.end {
                    return violation(format!("event {id} ends before it begins"));
                }
                if e.attributes.values().any(|v| !v.is_finite()) {
                    return violation(format!("event {id}: non-finite attribute value"));
                }
            }
        }
        Ok(())
    }

    fn check_endurant(&self, e: &Endurant) -> Result<(), GraphError> {
        let id = &e.id;
        let violation = |msg: String| Err(GraphError::InvariantViolation(msg));
        if self.require(&e.type_ref)? != ElementKind::EndurantType {
            return violation(format!("endurant {id}: {} is not an endurant type", e.type_ref));
        }
        if let Some(existence) = &e.existence {
            if !existence.is_well_formed() {
                return violation(format!("endurant {id}: existence ends before it begins"));
            }
        }
        if e.static_value.as_ref().is_some_and(|v| !v.is_finite()) {
            return violation(format!("endurant {id}: non-finite value"));
        }
        match e.category {
            EndurantCategory::Object => {
                if e.inheres_in.is_some() || !e.mediates.is_empty() {
                    return violation(format!("object {id} cannot inhere in or mediate"));
                }
                if e.static_value.is_some() {
                    return violation(format!("object {id} cannot carry a value"));
                }
            }
            EndurantCategory::Quality => {
                let Some(host) = &e.inheres_in else {
                    return violation(format!("quality {id} has no host"));
                };
                if !e.mediates.is_empty() {
                    return violation(format!("quality {id} cannot mediate"));
                }
                match self.require(host)? {
                    ElementKind::Endurant(EndurantCategory::Object)
                    | ElementKind::Endurant(EndurantCategory::Relator) => {}
                    _ => {
                        return violation(format!(
                            "quality {id}: host {host} must be an object or relator"
                        ))
                    }
                }
            }
            EndurantCategory::Relator => {
                if e.inheres_in.is_some() {
                    return violation(format!("relator {id} cannot inhere in anything"));
                }
                if e.static_value.is_some() {
                    return violation(format!("relator {id} cannot carry a value"));
                }
                if e.mediates.len() < self.min_mediation {
                    return violation(format!(
                        "relator {id} mediates {} endurants, at least {} required",
                        e.mediates.len(),
                        self.min_mediation
                    ));
                }
                for m in &e.mediates {
                    if m == id {
                        return violation(format!("relator {id} cannot mediate itself"));
                    }
                    if !matches!(self.require(m)?, ElementKind::Endurant(_)) {
                        return violation(format!("relator {id}: {m} is not an endurant"));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_link(&self, link: &Link) -> Result<(), GraphError> {
        let violation = |msg: String| Err(GraphError::InvariantViolation(msg));
        match link {
            Link::E2O(l) => {
                if self.require(&l.event)? != ElementKind::Event {
                    return violation(format!("{} is not an event", l.event));
                }
                if !matches!(self.require(&l.endurant)?, ElementKind::Endurant(_)) {
                    return violation(format!("{} is not an endurant", l.endurant));
                }
            }
            Link::E2E(l) => {
                for end in [&l.source, &l.target] {
                    if self.require(end)? != ElementKind::Event {
                        return violation(format!("{end} is not an event"));
                    }
                }
                if l.source == l.target {
                    return violation(format!("event {} cannot be linked to itself", l.source));
                }
                if l.kind == E2EKind::ProperPartOf && self.has_part(&l.source, &l.target) {
                    return violation(format!(
                        "{} part of {} would close a part-of cycle",
                        l.source, l.target
                    ));
                }
            }
            Link::QvasEvent(l) => {
                if self.require(&l.event)? != ElementKind::Event {
                    return violation(format!("{} is not an event", l.event));
                }
                if self.require(&l.qvas)? != ElementKind::Qvas {
                    return violation(format!("{} is not a qvas", l.qvas));
                }
            }
        }
        Ok(())
    }

    /// Whether `part` is a (transitive) proper part of `whole`.
    fn has_part(&self, whole: &EntityId, part: &EntityId) -> bool {
        let mut stack = vec![whole];
        let mut seen = BTreeSet::new();
        while let Some(w) = stack.pop() {
            for p in self.index.direct_parts.get(w).into_iter().flatten() {
                if p == part {
                    return true;
                }
                if seen.insert(p) {
                    stack.push(p);
                }
            }
        }
        false
    }

    /// Direct proper parts, or all transitive proper parts.
    pub fn parts_of(&self, event: &str, transitive: bool) -> Result<BTreeSet<EntityId>, QueryError> {
        self.require_event(event)?;
        let direct = |w: &str| self.index.direct_parts.get(w).into_iter().flatten();
        if !transitive {
            return Ok(direct(event).cloned().collect());
        }
        let mut out = BTreeSet::new();
        let mut stack: Vec<&EntityId> = direct(event).collect();
        while let Some(p) = stack.pop() {
            if out.insert(p.clone()) {
                stack.extend(direct(p.as_str()));
            }
        }
        Ok(out)
    }

    /// Atomic means no proper parts, whatever the event's duration.
    pub fn is_atomic(&self, event: &str) -> Result<bool, QueryError> {
        self.require_event(event)?;
        Ok(self
            .index
            .direct_parts
            .get(event)
            .is_none_or(BTreeSet::is_empty))
    }

    pub fn mediated_by(&self, relator: &str) -> Result<&BTreeSet<EntityId>, QueryError> {
        let e = self.require_endurant(relator)?;
        if e.category != EndurantCategory::Relator {
            return Err(QueryError::NotARelator(relator.into()));
        }
        Ok(&e.mediates)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{TimeInterval, TimePoint};

    fn t(ms: i64) -> TimePoint {
        TimePoint::from_millis(ms)
    }

    fn supervision_base() -> GocedGraph {
        let mut g = GocedGraph::new();
        g.insert(EndurantType::new("Person", "Person", SortalCategory::Kind)).unwrap();
        g.insert(EndurantType::new("Supervision", "Supervision", SortalCategory::Unspecified))
            .unwrap();
        for id in ["S", "M", "D"] {
            g.insert(Endurant::object(id, "Person")).unwrap();
        }
        g
    }

    #[test]
    fn insert_event_returns_id() {
        let mut g = GocedGraph::new();
        g.insert(EventType::new("assign", "assign student")).unwrap();
        let at = TimePoint::parse("2024-01-10T09:00:00Z").unwrap();
        let id = g.insert(Event::instant("e1", "assign", at)).unwrap();
        assert_eq!(id.as_str(), "e1");
        assert_eq!(g.is_atomic("e1"), Ok(true));
    }

    #[test]
    fn qvas_with_unknown_quality_is_dangling() {
        let mut g = GocedGraph::new();
        let err = g
            .insert(Qvas::new("v1", "q99", "x", TimeInterval::open(t(0))))
            .unwrap_err();
        assert_eq!(err, GraphError::DanglingReference("q99".into()));
    }

    #[test]
    fn ternary_relator_accepted() {
        let mut g = supervision_base();
        g.insert(Endurant::relator("sup", "Supervision", ["S", "M", "D"])).unwrap();
        let mediated: Vec<_> = g.mediated_by("sup").unwrap().iter().map(|i| i.as_str()).collect();
        assert_eq!(mediated, ["D", "M", "S"]);
        assert_eq!(g.mediated_by("S"), Err(QueryError::NotARelator("S".into())));
        assert_eq!(g.mediated_by("nope"), Err(QueryError::UnknownId("nope".into())));
    }

    #[test]
    fn relator_arity_respects_min_mediation() {
        let mut g = supervision_base();
        assert!(matches!(
            g.insert(Endurant::relator("r", "Supervision", ["S"])),
            Err(GraphError::InvariantViolation(_))
        ));
        let mut unary = GocedGraph::with_min_mediation(1);
        unary.insert(EndurantType::new("T", "T", SortalCategory::Kind)).unwrap();
        unary.insert(Endurant::object("a", "T")).unwrap();
        unary.insert(Endurant::relator("r", "T", ["a"])).unwrap();
    }

    #[test]
    fn quality_host_rules() {
        let mut g = supervision_base();
        g.insert(EndurantType::new("Cat", "Category", SortalCategory::Unspecified)).unwrap();
        g.insert(Endurant::relator("sup", "Supervision", ["S", "M"])).unwrap();
        g.insert(Endurant::quality("cat", "Cat", "sup").with_value("thesis")).unwrap();
        assert!(matches!(
            g.insert(Endurant::quality("meta", "Cat", "cat")),
            Err(GraphError::InvariantViolation(_))
        ));
        let mut bad = Endurant::object("X", "Person");
        bad.inheres_in = Some("S".into());
        assert!(matches!(g.insert(bad), Err(GraphError::InvariantViolation(_))));
        assert_eq!(
            g.insert(Endurant::object("Y", "Nope")),
            Err(GraphError::DanglingReference("Nope".into()))
        );
    }

    #[test]
    fn duplicate_ids_rejected_across_categories() {
        let mut g = supervision_base();
        g.insert(EventType::new("ev", "ev")).unwrap();
        assert_eq!(
            g.insert(Event::instant("S", "ev", t(0))),
            Err(GraphError::DuplicateId("S".into()))
        );
    }

    #[test]
    fn duplicate_links_are_idempotent() {
        let mut g = supervision_base();
        g.insert(EventType::new("ev", "ev")).unwrap();
        g.insert(Event::instant("e1", "ev", t(0))).unwrap();
        assert_eq!(g.link(E2OLink::new("e1", "S", E2OKind::Participated)), Ok(true));
        assert_eq!(g.link(E2OLink::new("e1", "S", E2OKind::Participated)), Ok(false));
        assert_eq!(g.link_count(), 1);
    }

    #[test]
    fn part_cycles_rejected() {
        let mut g = GocedGraph::new();
        g.insert(EventType::new("ev", "ev")).unwrap();
        for id in ["a", "b", "c"] {
            g.insert(Event::instant(id, "ev", t(0))).unwrap();
        }
        g.link(E2ELink::part_of("a", "b")).unwrap();
        g.link(E2ELink::part_of("b", "c")).unwrap();
        assert!(g.link(E2ELink::part_of("c", "a")).is_err());
        assert!(g.link(E2ELink::part_of("a", "a")).is_err());
        let all: Vec<_> = g.parts_of("c", true).unwrap().into_iter().collect();
        assert_eq!(all, vec![EntityId::from("a"), EntityId::from("b")]);
        assert_eq!(g.parts_of("c", false).unwrap().len(), 1);
        assert_eq!(g.is_atomic("a"), Ok(true));
        assert_eq!(g.is_atomic("c"), Ok(false));
        assert_eq!(g.parts_of("zz", false), Err(QueryError::UnknownId("zz".into())));
    }

    #[test]
    fn durative_event_without_parts_is_atomic() {
        let mut g = GocedGraph::new();
        g.insert(EventType::new("ev", "ev")).unwrap();
        g.insert(Event::new("long", "ev", t(0), t(10_000))).unwrap();
        assert_eq!(g.is_atomic("long"), Ok(true));
    }

    #[test]
    fn successful_purchase_parts() {
        let mut g = GocedGraph::new();
        g.insert(EventType::new("ev", "ev")).unwrap();
        g.insert(Event::new("Successful Purchase", "ev", t(0), t(30))).unwrap();
        for (i, id) in ["releasing PO", "issuing invoice", "paying"].iter().enumerate() {
            g.insert(Event::instant(*id, "ev", t(i as i64 * 10))).unwrap();
            g.link(E2ELink::part_of(*id, "Successful Purchase")).unwrap();
        }
        let parts: BTreeSet<_> = g.parts_of("Successful Purchase", false).unwrap();
        assert_eq!(parts.len(), 3);
        assert!(parts.contains("paying"));
        assert_eq!(g.is_atomic("Successful Purchase"), Ok(false));
    }

    #[test]
    fn insert_all_orders_by_dependency() {
        let elements: Vec<Element> = vec![
            Endurant::quality("q", "QT", "r").into(),
            Endurant::relator("r", "RT", ["a", "b"]).into(),
            Endurant::object("b", "OT").into(),
            Endurant::object("a", "OT").into(),
            EndurantType::new("QT", "q", SortalCategory::Unspecified).into(),
            EndurantType::new("RT", "r", SortalCategory::Unspecified).into(),
            EndurantType::new("OT", "o", SortalCategory::Kind).into(),
        ];
        let mut g = GocedGraph::new();
        g.insert_all(elements, Vec::new()).unwrap();
        assert_eq!(g.element_count(), 7);
        let mut missing = GocedGraph::new();
        assert_eq!(
            missing.insert_all(vec![Endurant::object("a", "OT").into()], Vec::new()),
            Err(GraphError::DanglingReference("OT".into()))
        );
    }

    #[test]
    fn rebuilt_indexes_match_incremental_ones() {
        let mut g = supervision_base();
        g.insert(EventType::new("ev", "ev")).unwrap();
        g.insert(Event::instant("e1", "ev", t(0))).unwrap();
        g.link(E2OLink::new("e1", "S", E2OKind::Created)).unwrap();
        let before = g.clone();
        g.rebuild_indexes();
        assert_eq!(g, before);
    }

    #[test]
    fn graph_is_shareable_across_threads() {
        fn assert_sync<T: Send + Sync>() {}
        assert_sync::<GocedGraph>();
    }
}
