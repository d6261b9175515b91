//! Random generators shared by the integration and acceptance tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use goced::model::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::{json, Value};

pub fn t(ms: i64) -> TimePoint {
    TimePoint::from_millis(ms)
}

/// Ids that exercise escaping in every output format.
const AWKWARD: [&str; 8] = ["", " x", "/y", "#z", "%41", "ü€", "a\"b", "<t>"];

fn awkward_id(rng: &mut StdRng, stem: &str, i: usize) -> String {
    let suffix = if rng.gen_bool(0.2) {
        AWKWARD.choose(rng).copied().unwrap_or_default()
    } else {
        ""
    };
    format!("{stem}{i}{suffix}")
}

pub fn random_scalar(rng: &mut StdRng) -> Scalar {
    match rng.gen_range(0..5) {
        0 => Scalar::Int(rng.gen_range(-1_000_000..1_000_000)),
        1 => Scalar::Float(rng.gen_range(-1e6..1e6)),
        2 => Scalar::Bool(rng.gen()),
        3 => Scalar::Str(["tab\there", "line\nbreak", "quote\"d", "back\\slash", "émoji 🚚"]
            .choose(rng)
            .unwrap()
            .to_string()),
        _ => Scalar::Str(format!("v{}", rng.gen_range(0..100))),
    }
}

/// Collects the elements and links of a graph.
pub fn contents(g: &GocedGraph) -> (Vec<Element>, Vec<Link>) {
    let mut elements: Vec<Element> = Vec::new();
    elements.extend(g.endurant_types().cloned().map(Element::from));
    elements.extend(g.event_types().cloned().map(Element::from));
    elements.extend(g.endurants().cloned().map(Element::from));
    elements.extend(g.events().cloned().map(Element::from));
    elements.extend(g.qvass().cloned().map(Element::from));
    (elements, g.links().collect())
}

/// The same graph built from a shuffled insertion order.
pub fn shuffled_copy(g: &GocedGraph, rng: &mut StdRng) -> GocedGraph {
    let (mut elements, mut links) = contents(g);
    elements.shuffle(rng);
    links.shuffle(rng);
    let mut copy = GocedGraph::with_min_mediation(g.min_mediation());
    copy.insert_all(elements, links).expect("same contents");
    copy
}

/// A graph satisfying every validation rule, with roughly `budget`
/// elements.
pub fn clean_graph(rng: &mut StdRng, budget: usize) -> GocedGraph {
    let mut g = GocedGraph::new();
    let sortals = [
        SortalCategory::Kind,
        SortalCategory::Phase,
        SortalCategory::Role,
        SortalCategory::Unspecified,
    ];
    let object_types: Vec<EntityId> = (0..rng.gen_range(1..4))
        .map(|i| {
            let id = awkward_id(rng, "OT", i);
            g.insert(EndurantType::new(id.as_str(), format!("Type {i}"), *sortals.choose(rng).unwrap()))
                .unwrap()
        })
        .collect();
    let quality_type = g
        .insert(EndurantType::new("QT", "Status", SortalCategory::Unspecified))
        .unwrap();
    let relator_type = g
        .insert(EndurantType::new("RT", "Contract", SortalCategory::Kind))
        .unwrap();
    let event_types: Vec<EntityId> = (0..rng.gen_range(1..4))
        .map(|i| g.insert(EventType::new(format!("ET{i}"), format!("do {i}"))).unwrap())
        .collect();

    let n_events = rng.gen_range(1..=(budget / 4).max(2));
    let n_objects = rng.gen_range(1..=(budget / 6).max(2));

    // atomic events
    let mut atomic: Vec<Event> = (0..n_events)
        .map(|i| {
            let begin = rng.gen_range(0..1_000_000i64);
            let len = if rng.gen_bool(0.5) { 0 } else { rng.gen_range(0..5_000) };
            let mut e = Event::new(
                awkward_id(rng, "e", i).as_str(),
                event_types.choose(rng).unwrap().clone(),
                t(begin),
                t(begin + len),
            );
            for k in 0..rng.gen_range(0..3) {
                e = e.with_attribute(format!("attr{k}"), random_scalar(rng));
            }
            e
        })
        .collect();
    atomic.sort_by_key(|e| (e.begin, e.end));
    for e in &atomic {
        g.insert(e.clone()).unwrap();
    }

    // complex events over disjoint groups of atomic parts, one level deep
    // plus occasional wholes of wholes
    let mut free: Vec<usize> = (0..atomic.len()).collect();
    free.shuffle(rng);
    let mut wholes: Vec<Event> = Vec::new();
    while free.len() >= 2 && rng.gen_bool(0.4) {
        let k = rng.gen_range(2..=free.len().min(4));
        let parts: Vec<Event> = free.drain(..k).map(|i| atomic[i].clone()).collect();
        let whole = whole_over(&mut g, format!("W{}", wholes.len()), &event_types[0], &parts);
        wholes.push(whole);
    }
    if wholes.len() >= 2 && rng.gen_bool(0.5) {
        let parts = wholes[..2].to_vec();
        whole_over(&mut g, "WW".to_string(), &event_types[0], &parts);
    }

    // objects with coherent lifecycles
    let mut objects: Vec<EntityId> = Vec::new();
    for i in 0..n_objects {
        let mut o = Endurant::object(awkward_id(rng, "o", i).as_str(), object_types.choose(rng).unwrap().clone());
        if rng.gen_bool(0.3) {
            o = o.with_label(format!("Object {i}"));
        }
        if rng.gen_bool(0.3) {
            let b = rng.gen_range(0..1_000_000);
            o = o.with_existence(if rng.gen_bool(0.5) {
                TimeInterval::open(t(b))
            } else {
                TimeInterval::closed(t(b), t(b + rng.gen_range(0..10_000)))
            });
        }
        let id = g.insert(o).unwrap();
        lifecycle(&mut g, rng, &id, &atomic);
        objects.push(id);
    }

    // qualities: static or a chain of attributions
    for (i, host) in objects.iter().enumerate() {
        if !rng.gen_bool(0.5) {
            continue;
        }
        let qid = format!("{host}/q{i}");
        let mut q = Endurant::quality(qid.as_str(), quality_type.clone(), host.clone());
        if rng.gen_bool(0.7) {
            q = q.with_label(format!("status {i}"));
        }
        if rng.gen_bool(0.4) {
            q = q.with_value(random_scalar(rng));
            g.insert(q).unwrap();
            continue;
        }
        g.insert(q).unwrap();
        attribution_chain(&mut g, rng, &qid, &atomic);
    }

    // relators over at least two objects
    if objects.len() >= 2 {
        for i in 0..rng.gen_range(0..=objects.len() / 2) {
            let k = rng.gen_range(2..=objects.len().min(4));
            let members: Vec<EntityId> = objects.choose_multiple(rng, k).cloned().collect();
            let mut r = Endurant::relator(format!("r{i}"), relator_type.clone(), members);
            if rng.gen_bool(0.5) {
                r = r.with_existence(TimeInterval::open(t(rng.gen_range(0..1_000_000))));
            }
            let id = g.insert(r).unwrap();
            if rng.gen_bool(0.3) {
                let q = Endurant::quality(format!("{id}/category"), quality_type.clone(), id.clone())
                    .with_label("Category")
                    .with_value("thesis");
                g.insert(q).unwrap();
            }
            lifecycle(&mut g, rng, &id, &atomic);
        }
    }

    // historical dependence: later-starting events depend on earlier ones
    for _ in 0..rng.gen_range(0..=atomic.len()) {
        let a = rng.gen_range(0..atomic.len());
        let b = rng.gen_range(0..atomic.len());
        let (dependee, dependent) = (a.min(b), a.max(b));
        if dependee != dependent && atomic[dependee].begin <= atomic[dependent].begin {
            g.link(E2ELink::depends_on(atomic[dependent].id.clone(), atomic[dependee].id.clone()))
                .unwrap();
        }
    }
    g
}

fn whole_over(g: &mut GocedGraph, id: String, event_type: &EntityId, parts: &[Event]) -> Event {
    let begin = parts.iter().map(|p| p.begin).min().unwrap();
    let end = parts.iter().map(|p| p.end).max().unwrap();
    let whole = Event::new(id.as_str(), event_type.clone(), begin, end);
    g.insert(whole.clone()).unwrap();
    for p in parts {
        g.link(E2ELink::part_of(p.id.clone(), whole.id.clone())).unwrap();
    }
    whole
}

/// Creation, optional termination and participations consistent in time.
fn lifecycle(g: &mut GocedGraph, rng: &mut StdRng, endurant: &EntityId, events: &[Event]) {
    if events.is_empty() || rng.gen_bool(0.2) {
        return;
    }
    let c = rng.gen_range(0..events.len());
    let created = &events[c];
    g.link(E2OLink::new(created.id.clone(), endurant.clone(), E2OKind::Created)).unwrap();
    let later: Vec<&Event> = events
        .iter()
        .filter(|e| e.id != created.id && e.begin >= created.end)
        .collect();
    let terminated = if rng.gen_bool(0.4) { later.choose(rng).copied() } else { None };
    if let Some(term) = terminated {
        g.link(E2OLink::new(term.id.clone(), endurant.clone(), E2OKind::Terminated)).unwrap();
    }
    for e in events {
        if e.id == created.id || terminated.is_some_and(|x| x.id == e.id) || !rng.gen_bool(0.3) {
            continue;
        }
        let after_creation = e.begin >= created.begin;
        let before_end = terminated.is_none_or(|x| e.end <= x.end);
        if after_creation && before_end {
            g.link(E2OLink::new(e.id.clone(), endurant.clone(), E2OKind::Participated)).unwrap();
        }
    }
}

fn attribution_chain(g: &mut GocedGraph, rng: &mut StdRng, quality: &str, events: &[Event]) {
    let mut stamps: BTreeSet<i64> = BTreeSet::new();
    for _ in 0..rng.gen_range(1..5) {
        stamps.insert(rng.gen_range(0..1_000_000));
    }
    let stamps: Vec<i64> = stamps.into_iter().collect();
    for (k, &begin) in stamps.iter().enumerate() {
        let end = match stamps.get(k + 1) {
            Some(&next) => Some(next),
            None if rng.gen_bool(0.5) => Some(begin + rng.gen_range(1..1_000)),
            None => None,
        };
        let validity = TimeInterval {
            begin: t(begin),
            end: end.map(t),
        };
        let id = g
            .insert(Qvas::new(format!("{quality}@{k}"), quality, random_scalar(rng), validity))
            .unwrap();
        if let Some(cause) = events.iter().rfind(|e| e.begin <= validity.begin) {
            if rng.gen_bool(0.5) {
                g.link(QvasEventLink::new(cause.id.clone(), id.clone(), QvasEventKind::BroughtAbout))
                    .unwrap();
            }
        }
        let triggered: Vec<&Event> = events
            .iter()
            .filter(|e| validity.contains_half_open(e.begin))
            .collect();
        if let Some(e) = triggered.choose(rng) {
            g.link(QvasEventLink::new(e.id.clone(), id, QvasEventKind::ContributedToTrigger))
                .unwrap();
        }
    }
}

/// Sizes of a generated OCEL log, for count-preservation checks.
#[derive(Debug, Clone, Copy, Default)]
pub struct OcelCounts {
    pub objects: usize,
    pub events: usize,
    pub o2o: usize,
    pub e2o: usize,
}

fn iso(ms: i64) -> String {
    t(ms).to_string()
}

/// A random OCEL 2.0 log whose lifecycles are coherent: `create` only on
/// an object's first event, `delete` only on its last.
pub fn random_ocel(rng: &mut StdRng) -> (Value, OcelCounts) {
    let n_types = rng.gen_range(1..4);
    let n_objects = rng.gen_range(0..20);
    let n_events = rng.gen_range(0..40);
    let type_name = |i: usize| format!("Type {i}");

    let mut objects: Vec<Value> = Vec::new();
    let mut o2o = 0;
    for i in 0..n_objects {
        let mut attributes = Vec::new();
        if rng.gen_bool(0.5) {
            attributes.push(json!({"name": "weight", "value": rng.gen_range(1..100)}));
        }
        let mut times: Vec<i64> = (0..rng.gen_range(0..4)).map(|_| rng.gen_range(0..100_000)).collect();
        times.sort();
        for (k, ms) in times.iter().enumerate() {
            attributes.push(json!({"name": "status", "value": format!("s{k}"), "time": iso(*ms)}));
        }
        let mut relationships = Vec::new();
        let mut targets: Vec<usize> = (0..n_objects).filter(|&j| j != i).collect();
        targets.shuffle(rng);
        for &j in targets.iter().take(rng.gen_range(0..3)) {
            let qualifier = *["owns", "refers to", ""].choose(rng).unwrap();
            relationships.push(json!({"objectId": format!("o{j}"), "qualifier": qualifier}));
            o2o += 1;
        }
        objects.push(json!({
            "id": format!("o{i}"),
            "type": type_name(rng.gen_range(0..n_types)),
            "attributes": attributes,
            "relationships": relationships,
        }));
    }

    let mut events: Vec<(i64, Vec<usize>)> = (0..n_events)
        .map(|_| {
            let ms = rng.gen_range(0..100_000);
            let k = rng.gen_range(0..=n_objects.min(4));
            let mut related: Vec<usize> = (0..n_objects).collect();
            related.shuffle(rng);
            related.truncate(k);
            (ms, related)
        })
        .collect();
    events.sort_by_key(|(ms, _)| *ms);
    let mut first: Vec<Option<usize>> = vec![None; n_objects];
    let mut last: Vec<Option<usize>> = vec![None; n_objects];
    for (i, (_, related)) in events.iter().enumerate() {
        for &o in related {
            first[o].get_or_insert(i);
            last[o] = Some(i);
        }
    }
    let mut e2o = 0;
    let events_json: Vec<Value> = events
        .iter()
        .enumerate()
        .map(|(i, (ms, related))| {
            let relationships: Vec<Value> = related
                .iter()
                .map(|&o| {
                    e2o += 1;
                    let qualifier = if first[o] == Some(i) && rng.gen_bool(0.6) {
                        "create"
                    } else if last[o] == Some(i) && first[o] != Some(i) && rng.gen_bool(0.3) {
                        "delete"
                    } else {
                        *["uses", "reads", "approves"].choose(rng).unwrap()
                    };
                    json!({"objectId": format!("o{o}"), "qualifier": qualifier})
                })
                .collect();
            json!({
                "id": format!("e{i}"),
                "type": if i % 2 == 0 { "place" } else { "ship" },
                "time": iso(*ms),
                "attributes": [{"name": "cost", "value": rng.gen_range(0.0..10.0)}],
                "relationships": relationships,
            })
        })
        .collect();

    let log = json!({
        "objectTypes": (0..n_types).map(|i| json!({"name": type_name(i), "attributes": []})).collect::<Vec<_>>(),
        "eventTypes": [{"name": "place", "attributes": []}, {"name": "ship", "attributes": []}],
        "objects": objects,
        "events": events_json,
    });
    let counts = OcelCounts {
        objects: n_objects,
        events: n_events,
        o2o,
        e2o,
    };
    (log, counts)
}

/// Random proper or point interval pairs with small integer endpoints.
pub fn interval_pair(rng: &mut StdRng, span: i64, allow_points: bool) -> (TimeInterval, TimeInterval) {
    let mut one = || {
        let a = rng.gen_range(0..span);
        let b = rng.gen_range(0..span);
        let (lo, hi) = (a.min(b), a.max(b));
        let hi = if lo == hi && !allow_points { hi + 1 } else { hi };
        TimeInterval::closed(t(lo), t(hi))
    };
    (one(), one())
}

/// A graph with only events, objects and E2O links, for ordering checks.
pub fn events_and_objects(rng: &mut StdRng, max_events: usize, max_objects: usize) -> GocedGraph {
    let mut g = GocedGraph::new();
    g.insert(EndurantType::new("T", "T", SortalCategory::Kind)).unwrap();
    g.insert(EventType::new("ET", "ET")).unwrap();
    let n_objects = rng.gen_range(1..=max_objects);
    for o in 0..n_objects {
        g.insert(Endurant::object(format!("o{o}"), "T")).unwrap();
    }
    for e in 0..rng.gen_range(0..=max_events) {
        // coarse timestamps so that ties and overlaps are common
        let begin = rng.gen_range(0..50) * 10;
        let end = begin + rng.gen_range(0..3) * 10;
        g.insert(Event::new(format!("e{e}"), "ET", t(begin), t(end))).unwrap();
        for o in 0..n_objects {
            if rng.gen_bool(0.3) {
                g.link(E2OLink::new(format!("e{e}"), format!("o{o}"), E2OKind::Participated))
                    .unwrap();
            }
        }
    }
    g
}

/// Random DAG edges `(dependent, dependee)` over `n` nodes: edges always
/// point from a higher to a lower index.
pub fn random_dag(rng: &mut StdRng, n: usize, max_edges: usize) -> Vec<(EntityId, EntityId)> {
    let mut edges = BTreeSet::new();
    if n < 2 {
        return Vec::new();
    }
    for _ in 0..rng.gen_range(0..=max_edges) {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b {
            let (hi, lo) = (a.max(b), a.min(b));
            edges.insert((EntityId::new(format!("n{hi}")), EntityId::new(format!("n{lo}"))));
        }
    }
    edges.into_iter().collect()
}

/// Naive fixpoint transitive closure: extend known pairs by one edge
/// until nothing changes.
pub fn fixpoint_closure(edges: &[(EntityId, EntityId)]) -> BTreeSet<(EntityId, EntityId)> {
    let mut closure: BTreeSet<(EntityId, EntityId)> = edges.iter().cloned().collect();
    loop {
        let mut added = Vec::new();
        for (a, b) in &closure {
            for (c, d) in edges {
                if b == c && !closure.contains(&(a.clone(), d.clone())) {
                    added.push((a.clone(), d.clone()));
                }
            }
        }
        if added.is_empty() {
            return closure;
        }
        closure.extend(added);
    }
}

/// Directly-follows by brute force: sort the object's events by
/// `(begin, end, id)` and keep adjacent pairs that do not overlap.
pub fn df_oracle(g: &GocedGraph, object: &str) -> Vec<(EntityId, EntityId)> {
    let mut events: Vec<&Event> = g
        .e2o_links()
        .filter(|l| l.endurant.as_str() == object)
        .map(|l| g.event(l.event.as_str()).unwrap())
        .collect();
    events.sort_by(|a, b| {
        a.begin
            .cmp(&b.begin)
            .then(a.end.cmp(&b.end))
            .then(a.id.cmp(&b.id))
    });
    events.dedup_by(|a, b| a.id == b.id);
    let mut out = Vec::new();
    for i in 1..events.len() {
        if events[i - 1].end <= events[i].begin {
            out.push((events[i - 1].id.clone(), events[i].id.clone()));
        }
    }
    out
}
