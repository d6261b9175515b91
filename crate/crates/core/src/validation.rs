//! Axiom and coherence checks over a [`GocedGraph`].
//!
//! Every rule reports [`Violation`]s as data; validation never stops at the
//! first problem. The output order is canonical: by rule code, then by
//! subject ids.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::model::{
    E2EKind, E2OKind, EndurantCategory, EntityId, Event, GocedGraph, QvasEventKind,
    DEFAULT_MIN_MEDIATION,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleCode {
    /// Weak supplementation of proper parts.
    WS01,
    /// Extensionality: no two complex events with the same parts.
    EX01,
    /// Part-of acyclicity.
    PP01,
    /// A part happens within its whole.
    PP02,
    /// Interval sanity.
    TM01,
    /// QVAS of one quality never overlap.
    QV01,
    /// Relator mediation arity.
    RL01,
    /// At most one creation and one termination per endurant.
    EO01,
    /// Creation precedes participation precedes termination.
    EO02,
    /// A brought-about value starts no earlier than its event.
    QE01,
    /// A triggering value holds when its event begins.
    QE02,
    /// Historical dependence acyclicity.
    HD01,
    /// Dependee begins no later than its dependent.
    HD02,
}

impl RuleCode {
    pub const ALL: [RuleCode; 13] = [
        RuleCode::WS01,
        RuleCode::EX01,
        RuleCode::PP01,
        RuleCode::PP02,
        RuleCode::TM01,
        RuleCode::QV01,
        RuleCode::RL01,
        RuleCode::EO01,
        RuleCode::EO02,
        RuleCode::QE01,
        RuleCode::QE02,
        RuleCode::HD01,
        RuleCode::HD02,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleCode::WS01 => "WS01",
            RuleCode::EX01 => "EX01",
            RuleCode::PP01 => "PP01",
            RuleCode::PP02 => "PP02",
            RuleCode::TM01 => "TM01",
            RuleCode::QV01 => "QV01",
            RuleCode::RL01 => "RL01",
            RuleCode::EO01 => "EO01",
            RuleCode::EO02 => "EO02",
            RuleCode::QE01 => "QE01",
            RuleCode::QE02 => "QE02",
            RuleCode::HD01 => "HD01",
            RuleCode::HD02 => "HD02",
        }
    }

    pub fn enabled_by_default(self) -> bool {
        self != RuleCode::HD02
    }
}

impl fmt::Display for RuleCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("unknown rule code {0:?}")]
    UnknownRule(String),
    #[error("min_mediation must be at least 1")]
    ZeroMediation,
}

impl FromStr for RuleCode {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleCode::ALL
            .into_iter()
            .find(|r| r.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| ConfigError::UnknownRule(s.to_string()))
    }
}

impl Serialize for RuleCode {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub rule: RuleCode,
    pub subjects: Vec<EntityId>,
    pub message: String,
}

impl Violation {
    fn new(rule: RuleCode, subjects: Vec<EntityId>, message: impl Into<String>) -> Self {
        Violation {
            rule,
            subjects,
            message: message.into(),
        }
    }

    /// One-line JSON form used for JSON-lines output.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("violations always serialize")
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.rule, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationConfig {
    pub enabled_rules: BTreeSet<RuleCode>,
    pub min_mediation: usize,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        ValidationConfig {
            enabled_rules: RuleCode::ALL
                .into_iter()
                .filter(|r| r.enabled_by_default())
                .collect(),
            min_mediation: DEFAULT_MIN_MEDIATION,
        }
    }
}

impl ValidationConfig {
    pub fn all_rules() -> Self {
        ValidationConfig {
            enabled_rules: RuleCode::ALL.into_iter().collect(),
            ..ValidationConfig::default()
        }
    }

    /// Parses a rule selection: `all`, `default`, or a comma-separated list
    /// of rule codes.
    pub fn from_rule_list(spec: &str) -> Result<Self, ConfigError> {
        match spec.trim() {
            "all" => Ok(ValidationConfig::all_rules()),
            "default" | "" => Ok(ValidationConfig::default()),
            list => {
                let enabled_rules = list
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(RuleCode::from_str)
                    .collect::<Result<_, _>>()?;
                Ok(ValidationConfig {
                    enabled_rules,
                    ..ValidationConfig::default()
                })
            }
        }
    }

    pub fn with_min_mediation(mut self, min_mediation: usize) -> Result<Self, ConfigError> {
        if min_mediation == 0 {
            return Err(ConfigError::ZeroMediation);
        }
        self.min_mediation = min_mediation;
        Ok(self)
    }

    pub fn without(mut self, rule: RuleCode) -> Self {
        self.enabled_rules.remove(&rule);
        self
    }
}

/// Runs every enabled rule and returns the sorted violation list.
pub fn validate(graph: &GocedGraph, config: &ValidationConfig) -> Vec<Violation> {
    let mut out = Vec::new();
    for &rule in &config.enabled_rules {
        let check: fn(&GocedGraph, &ValidationConfig, &mut Vec<Violation>) = match rule {
            RuleCode::WS01 => weak_supplementation,
            RuleCode::EX01 => extensionality,
            RuleCode::PP01 => part_acyclicity,
            RuleCode::PP02 => part_containment,
            RuleCode::TM01 => interval_sanity,
            RuleCode::QV01 => qvas_overlap,
            RuleCode::RL01 => mediation_arity,
            RuleCode::EO01 => lifecycle_uniqueness,
            RuleCode::EO02 => lifecycle_order,
            RuleCode::QE01 => brought_about,
            RuleCode::QE02 => trigger,
            RuleCode::HD01 => dependence_acyclicity,
            RuleCode::HD02 => dependence_order,
        };
        check(graph, config, &mut out);
    }
    out.sort();
    out.dedup();
    out
}

fn ids<'a>(items: impl IntoIterator<Item = &'a EntityId>) -> Vec<EntityId> {
    items.into_iter().cloned().collect()
}

fn part_links(graph: &GocedGraph) -> impl Iterator<Item = (&EntityId, &EntityId)> {
    graph
        .e2e_links()
        .filter(|l| l.kind == E2EKind::ProperPartOf)
        .map(|l| (&l.source, &l.target))
}

fn direct_parts(graph: &GocedGraph) -> BTreeMap<&EntityId, BTreeSet<&EntityId>> {
    let mut map: BTreeMap<&EntityId, BTreeSet<&EntityId>> = BTreeMap::new();
    for (part, whole) in part_links(graph) {
        map.entry(whole).or_default().insert(part);
    }
    map
}

/// Everything reachable from `start` (excluding `start` unless on a cycle).
fn reachable<'a>(
    succ: &BTreeMap<&'a EntityId, BTreeSet<&'a EntityId>>,
    start: &'a EntityId,
) -> BTreeSet<&'a EntityId> {
    let mut seen = BTreeSet::new();
    let mut stack = vec![start];
    while let Some(n) = stack.pop() {
        for &m in succ.get(n).into_iter().flatten() {
            if seen.insert(m) {
                stack.push(m);
            }
        }
    }
    seen
}

/// Groups of nodes lying on a common cycle.
fn cyclic_groups<'a>(
    edges: impl IntoIterator<Item = (&'a EntityId, &'a EntityId)>,
) -> Vec<Vec<EntityId>> {
    let mut succ: BTreeMap<&EntityId, BTreeSet<&EntityId>> = BTreeMap::new();
    for (a, b) in edges {
        succ.entry(a).or_default().insert(b);
    }
    let reach: BTreeMap<&EntityId, BTreeSet<&EntityId>> =
        succ.keys().map(|&n| (n, reachable(&succ, n))).collect();
    let mut groups = BTreeSet::new();
    for (&n, r) in &reach {
        if r.contains(n) {
            let group: Vec<EntityId> = r
                .iter()
                .filter(|m| reach.get(**m).is_some_and(|rm| rm.contains(n)))
                .map(|m| (*m).clone())
                .collect();
            groups.insert(group);
        }
    }
    groups.into_iter().collect()
}

// If a whole has a proper part p, it must have another proper part
// sharing no part with p.
fn weak_supplementation(g: &GocedGraph, _: &ValidationConfig, out: &mut Vec<Violation>) {
    let succ = direct_parts(g);
    for &whole in succ.keys() {
        let parts = reachable(&succ, whole);
        let down: BTreeMap<&EntityId, BTreeSet<&EntityId>> = parts
            .iter()
            .map(|&p| {
                let mut d = reachable(&succ, p);
                d.insert(p);
                (p, d)
            })
            .collect();
        let lonely: Vec<&EntityId> = parts
            .iter()
            .copied()
            .filter(|p| {
                !parts
                    .iter()
                    .any(|q| q != p && down[p].is_disjoint(&down[q]))
            })
            .collect();
        if !lonely.is_empty() {
            let subjects = ids(std::iter::once(whole).chain(lonely.iter().copied()));
            let names: Vec<&str> = lonely.iter().map(|p| p.as_str()).collect();
            out.push(Violation::new(
                RuleCode::WS01,
                subjects,
                format!(
                    "event {whole} has no proper part disjoint from {}",
                    names.join(", ")
                ),
            ));
        }
    }
}

fn extensionality(g: &GocedGraph, _: &ValidationConfig, out: &mut Vec<Violation>) {
    let mut by_parts: BTreeMap<BTreeSet<&EntityId>, Vec<&EntityId>> = BTreeMap::new();
    for (whole, parts) in direct_parts(g) {
        by_parts.entry(parts).or_default().push(whole);
    }
    for (parts, wholes) in by_parts {
        if wholes.len() > 1 {
            let names: Vec<&str> = parts.iter().map(|p| p.as_str()).collect();
            out.push(Violation::new(
                RuleCode::EX01,
                ids(wholes.iter().copied()),
                format!(
                    "{} distinct events share the parts {{{}}}",
                    wholes.len(),
                    names.join(", ")
                ),
            ));
        }
    }
}

fn part_acyclicity(g: &GocedGraph, _: &ValidationConfig, out: &mut Vec<Violation>) {
    for group in cyclic_groups(part_links(g)) {
        out.push(Violation::new(RuleCode::PP01, group, "part-of cycle"));
    }
}

fn part_containment(g: &GocedGraph, _: &ValidationConfig, out: &mut Vec<Violation>) {
    for (part, whole) in part_links(g) {
        let (Some(p), Some(w)) = (g.event(part.as_str()), g.event(whole.as_str())) else {
            continue;
        };
        if p.begin < w.begin || p.end > w.end {
            out.push(Violation::new(
                RuleCode::PP02,
                vec![part.clone(), whole.clone()],
                format!(
                    "part {part} {} lies outside whole {whole} {}",
                    p.interval(),
                    w.interval()
                ),
            ));
        }
    }
}

fn interval_sanity(g: &GocedGraph, _: &ValidationConfig, out: &mut Vec<Violation>) {
    for e in g.events() {
        if e.begin > e.end {
            out.push(Violation::new(
                RuleCode::TM01,
                vec![e.id.clone()],
                format!("event {} ends before it begins", e.id),
            ));
        }
    }
    for q in g.qvass() {
        if !q.validity.is_well_formed() {
            out.push(Violation::new(
                RuleCode::TM01,
                vec![q.id.clone()],
                format!("qvas {} ends before it begins", q.id),
            ));
        }
    }
    for e in g.endurants() {
        if e.existence.is_some_and(|iv| !iv.is_well_formed()) {
            out.push(Violation::new(
                RuleCode::TM01,
                vec![e.id.clone()],
                format!("endurant {} stops existing before it starts", e.id),
            ));
        }
    }
}

fn qvas_overlap(g: &GocedGraph, _: &ValidationConfig, out: &mut Vec<Violation>) {
    for quality in g.endurants().filter(|e| e.category == EndurantCategory::Quality) {
        let qvas: Vec<_> = g
            .qvas_of(quality.id.as_str())
            .filter_map(|id| g.qvas(id.as_str()))
            .collect();
        for (i, a) in qvas.iter().enumerate() {
            for b in &qvas[i + 1..] {
                if a.validity.overlaps_half_open(&b.validity) {
                    out.push(Violation::new(
                        RuleCode::QV01,
                        vec![quality.id.clone(), a.id.clone(), b.id.clone()],
                        format!(
                            "quality {}: {} {} overlaps {} {}",
                            quality.id, a.id, a.validity, b.id, b.validity
                        ),
                    ));
                }
            }
        }
    }
}

fn mediation_arity(g: &GocedGraph, config: &ValidationConfig, out: &mut Vec<Violation>) {
    for r in g.endurants().filter(|e| e.category == EndurantCategory::Relator) {
        if r.mediates.len() < config.min_mediation {
            out.push(Violation::new(
                RuleCode::RL01,
                vec![r.id.clone()],
                format!(
                    "relator {} mediates {} endurant(s), expected at least {}",
                    r.id,
                    r.mediates.len(),
                    config.min_mediation
                ),
            ));
        }
    }
}

struct Lifecycle<'g> {
    created: Vec<&'g Event>,
    terminated: Vec<&'g Event>,
    participated: Vec<&'g Event>,
}

fn lifecycles(g: &GocedGraph) -> BTreeMap<&EntityId, Lifecycle<'_>> {
    let mut map: BTreeMap<&EntityId, Lifecycle> = BTreeMap::new();
    for l in g.e2o_links() {
        let Some(ev) = g.event(l.event.as_str()) else {
            continue;
        };
        let entry = map.entry(&l.endurant).or_insert_with(|| Lifecycle {
            created: Vec::new(),
            terminated: Vec::new(),
            participated: Vec::new(),
        });
        match l.kind {
            E2OKind::Created => entry.created.push(ev),
            E2OKind::Terminated => entry.terminated.push(ev),
            E2OKind::Participated => entry.participated.push(ev),
        }
    }
    map
}

fn lifecycle_uniqueness(g: &GocedGraph, _: &ValidationConfig, out: &mut Vec<Violation>) {
    for (endurant, life) in lifecycles(g) {
        for (events, what) in [(&life.created, "created"), (&life.terminated, "terminated")] {
            if events.len() > 1 {
                out.push(Violation::new(
                    RuleCode::EO01,
                    ids(std::iter::once(endurant).chain(events.iter().map(|e| &e.id))),
                    format!("endurant {endurant} is {what} by {} events", events.len()),
                ));
            }
        }
    }
}

fn lifecycle_order(g: &GocedGraph, _: &ValidationConfig, out: &mut Vec<Violation>) {
    for (endurant, life) in lifecycles(g) {
        for c in &life.created {
            for t in &life.terminated {
                if c.end > t.begin {
                    out.push(Violation::new(
                        RuleCode::EO02,
                        vec![endurant.clone(), c.id.clone(), t.id.clone()],
                        format!(
                            "endurant {endurant} is terminated by {} before creation by {} ends",
                            t.id, c.id
                        ),
                    ));
                }
            }
        }
        for p in &life.participated {
            let early = life.created.iter().any(|c| p.begin < c.begin);
            let late = life.terminated.iter().any(|t| p.end > t.end);
            if early || late {
                out.push(Violation::new(
                    RuleCode::EO02,
                    vec![endurant.clone(), p.id.clone()],
                    format!(
                        "endurant {endurant} participates in {} {} its lifetime",
                        p.id,
                        if early { "before" } else { "after" }
                    ),
                ));
            }
        }
    }
}

fn qvas_event_pairs(
    g: &GocedGraph,
    kind: QvasEventKind,
) -> impl Iterator<Item = (&Event, &crate::model::Qvas)> {
    g.qvas_event_links()
        .filter(move |l| l.kind == kind)
        .filter_map(|l| Some((g.event(l.event.as_str())?, g.qvas(l.qvas.as_str())?)))
}

fn brought_about(g: &GocedGraph, _: &ValidationConfig, out: &mut Vec<Violation>) {
    for (ev, q) in qvas_event_pairs(g, QvasEventKind::BroughtAbout) {
        if q.validity.begin < ev.begin {
            out.push(Violation::new(
                RuleCode::QE01,
                vec![ev.id.clone(), q.id.clone()],
                format!("{} holds from {}, before {} began", q.id, q.validity.begin, ev.id),
            ));
        }
    }
}

fn trigger(g: &GocedGraph, _: &ValidationConfig, out: &mut Vec<Violation>) {
    for (ev, q) in qvas_event_pairs(g, QvasEventKind::ContributedToTrigger) {
        if !q.validity.contains_half_open(ev.begin) {
            out.push(Violation::new(
                RuleCode::QE02,
                vec![ev.id.clone(), q.id.clone()],
                format!("{} {} does not hold when {} begins", q.id, q.validity, ev.id),
            ));
        }
    }
}

fn dependence_links(g: &GocedGraph) -> impl Iterator<Item = (&EntityId, &EntityId)> {
    g.e2e_links()
        .filter(|l| l.kind == E2EKind::HistoricallyDependsOn)
        .map(|l| (&l.source, &l.target))
}

fn dependence_acyclicity(g: &GocedGraph, _: &ValidationConfig, out: &mut Vec<Violation>) {
    for group in cyclic_groups(dependence_links(g)) {
        out.push(Violation::new(
            RuleCode::HD01,
            group,
            "historical dependence cycle",
        ));
    }
}

fn dependence_order(g: &GocedGraph, _: &ValidationConfig, out: &mut Vec<Violation>) {
    for (dependent, dependee) in dependence_links(g) {
        let (Some(a), Some(b)) = (g.event(dependent.as_str()), g.event(dependee.as_str())) else {
            continue;
        };
        if b.begin > a.begin {
            out.push(Violation::new(
                RuleCode::HD02,
                vec![dependent.clone(), dependee.clone()],
                format!("{dependent} depends on {dependee}, which begins later"),
            ));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::*;

    fn t(ms: i64) -> TimePoint {
        TimePoint::from_millis(ms)
    }

    fn events(ids: &[(&str, i64, i64)]) -> GocedGraph {
        let mut g = GocedGraph::new();
        g.insert(EventType::new("ev", "ev")).unwrap();
        for (id, b, e) in ids {
            g.insert(Event::new(*id, "ev", t(*b), t(*e))).unwrap();
        }
        g
    }

    fn codes(v: &[Violation]) -> Vec<&'static str> {
        v.iter().map(|x| x.rule.as_str()).collect()
    }

    #[test]
    fn single_part_whole_violates_weak_supplementation() {
        let mut g = events(&[("w", 0, 10), ("p", 1, 2)]);
        g.link(E2ELink::part_of("p", "w")).unwrap();
        let v = validate(&g, &ValidationConfig::default());
        assert_eq!(codes(&v), ["WS01"]);
        assert_eq!(v[0].subjects, vec![EntityId::from("w"), EntityId::from("p")]);
    }

    #[test]
    fn nested_parts_need_their_own_supplement() {
        // w has parts a and b, with b part of a: b is only overlapping a
        let mut g = events(&[("w", 0, 10), ("a", 1, 5), ("b", 2, 3), ("c", 3, 4)]);
        g.link(E2ELink::part_of("a", "w")).unwrap();
        g.link(E2ELink::part_of("b", "a")).unwrap();
        g.link(E2ELink::part_of("c", "a")).unwrap();
        let v = validate(&g, &ValidationConfig::default());
        assert_eq!(codes(&v), ["WS01"]);
        assert_eq!(v[0].subjects[0].as_str(), "w");
        assert!(v[0].subjects.contains(&"a".into()));
    }

    #[test]
    fn shared_part_sets_violate_extensionality() {
        let mut g = events(&[("w1", 0, 10), ("w2", 0, 10), ("p1", 1, 2), ("p2", 3, 4)]);
        for w in ["w1", "w2"] {
            for p in ["p1", "p2"] {
                g.link(E2ELink::part_of(p, w)).unwrap();
            }
        }
        let v = validate(&g, &ValidationConfig::default());
        assert_eq!(codes(&v), ["EX01"]);
        assert_eq!(v[0].subjects, vec![EntityId::from("w1"), EntityId::from("w2")]);
    }

    #[test]
    fn part_outside_whole() {
        let mut g = events(&[("w", 0, 10), ("p1", 1, 2), ("p2", 9, 12)]);
        g.link(E2ELink::part_of("p1", "w")).unwrap();
        g.link(E2ELink::part_of("p2", "w")).unwrap();
        let v = validate(&g, &ValidationConfig::default());
        assert_eq!(codes(&v), ["PP02"]);
        assert!(validate(&g, &ValidationConfig::default().without(RuleCode::PP02)).is_empty());
    }

    fn po() -> GocedGraph {
        let mut g = events(&[("e1", 100, 100), ("e2", 200, 200)]);
        g.insert(EndurantType::new("PO_T", "PO", SortalCategory::Kind)).unwrap();
        g.insert(EndurantType::new("RS", "Release Status", SortalCategory::Unspecified))
            .unwrap();
        g.insert(Endurant::object("PO", "PO_T")).unwrap();
        g.insert(Endurant::quality("rs", "RS", "PO")).unwrap();
        g.insert(Qvas::new(
            "v1",
            "rs",
            "non-released",
            TimeInterval::closed(t(100), t(200)),
        ))
        .unwrap();
        g.insert(Qvas::new("v2", "rs", "released", TimeInterval::open(t(200)))).unwrap();
        g
    }

    #[test]
    fn adjacent_qvas_are_fine_overlapping_are_not() {
        let mut g = po();
        assert!(validate(&g, &ValidationConfig::default()).is_empty());
        g.insert(Qvas::new("v3", "rs", "odd", TimeInterval::open(t(150)))).unwrap();
        let v = validate(&g, &ValidationConfig::default());
        assert_eq!(codes(&v), ["QV01", "QV01"]);
    }

    #[test]
    fn qvas_event_coherence() {
        let mut g = po();
        g.link(QvasEventLink::new("e2", "v2", QvasEventKind::BroughtAbout)).unwrap();
        g.link(QvasEventLink::new("e1", "v1", QvasEventKind::ContributedToTrigger))
            .unwrap();
        assert!(validate(&g, &ValidationConfig::default()).is_empty());
        g.link(QvasEventLink::new("e2", "v1", QvasEventKind::BroughtAbout)).unwrap();
        g.link(QvasEventLink::new("e2", "v1", QvasEventKind::ContributedToTrigger))
            .unwrap();
        assert_eq!(codes(&validate(&g, &ValidationConfig::default())), ["QE01", "QE02"]);
    }

    #[test]
    fn lifecycle_rules() {
        let mut g = po();
        g.insert(Event::instant("e0", "ev", t(50))).unwrap();
        g.link(E2OLink::new("e1", "PO", E2OKind::Created)).unwrap();
        g.link(E2OLink::new("e2", "PO", E2OKind::Terminated)).unwrap();
        assert!(validate(&g, &ValidationConfig::default()).is_empty());
        g.link(E2OLink::new("e0", "PO", E2OKind::Participated)).unwrap();
        assert_eq!(codes(&validate(&g, &ValidationConfig::default())), ["EO02"]);
        g.link(E2OLink::new("e0", "PO", E2OKind::Created)).unwrap();
        let v = validate(&g, &ValidationConfig::default());
        assert_eq!(codes(&v), ["EO01", "EO02"]);
    }

    #[test]
    fn termination_before_creation() {
        let mut g = po();
        g.link(E2OLink::new("e2", "PO", E2OKind::Created)).unwrap();
        g.link(E2OLink::new("e1", "PO", E2OKind::Terminated)).unwrap();
        assert_eq!(codes(&validate(&g, &ValidationConfig::default())), ["EO02"]);
    }

    #[test]
    fn relator_arity_against_config() {
        let mut g = GocedGraph::with_min_mediation(1);
        g.insert(EndurantType::new("T", "T", SortalCategory::Kind)).unwrap();
        g.insert(Endurant::object("a", "T")).unwrap();
        g.insert(Endurant::relator("r", "T", ["a"])).unwrap();
        assert_eq!(codes(&validate(&g, &ValidationConfig::default())), ["RL01"]);
        let lenient = ValidationConfig::default().with_min_mediation(1).unwrap();
        assert!(validate(&g, &lenient).is_empty());
    }

    #[test]
    fn dependence_rules() {
        let mut g = events(&[("a", 1, 1), ("b", 2, 2), ("c", 3, 3)]);
        g.link(E2ELink::depends_on("a", "b")).unwrap();
        assert!(validate(&g, &ValidationConfig::default()).is_empty());
        assert_eq!(codes(&validate(&g, &ValidationConfig::all_rules())), ["HD02"]);
        g.link(E2ELink::depends_on("b", "c")).unwrap();
        g.link(E2ELink::depends_on("c", "a")).unwrap();
        let v = validate(&g, &ValidationConfig::default());
        assert_eq!(codes(&v), ["HD01"]);
        assert_eq!(v[0].subjects.len(), 3);
    }

    #[test]
    fn rule_lists() {
        assert_eq!(ValidationConfig::default().enabled_rules.len(), 12);
        assert_eq!(ValidationConfig::from_rule_list("all").unwrap().enabled_rules.len(), 13);
        let some = ValidationConfig::from_rule_list("WS01,qv01").unwrap();
        assert_eq!(
            some.enabled_rules.into_iter().collect::<Vec<_>>(),
            [RuleCode::WS01, RuleCode::QV01]
        );
        assert_eq!(
            ValidationConfig::from_rule_list("WS01,XX99"),
            Err(ConfigError::UnknownRule("XX99".into()))
        );
        assert_eq!(
            ValidationConfig::default().with_min_mediation(0),
            Err(ConfigError::ZeroMediation)
        );
    }

    #[test]
    fn json_line_shape() {
        let v = Violation::new(RuleCode::WS01, vec!["w".into(), "p".into()], "m");
        assert_eq!(v.to_json_line(), r#"{"rule":"WS01","subjects":["w","p"],"message":"m"}"#);
    }
}
