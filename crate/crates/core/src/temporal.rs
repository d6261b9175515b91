//! Temporal derivations over a [`GocedGraph`]: Allen relations between
//! event intervals, per-object directly-follows pairs, the closure of
//! historical dependence, and point-in-time object snapshots.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::model::{
    E2EKind, EndurantCategory, EntityId, GocedGraph, Qvas, QueryError, Scalar, TimeInterval,
    TimePoint,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TemporalError {
    #[error(transparent)]
    Query(#[from] QueryError),
    #[error("interval {0} is open-ended")]
    OpenInterval(TimeInterval),
    #[error("interval {0} is a single point")]
    DegenerateInterval(TimeInterval),
    #[error("historical dependence is cyclic through {0}")]
    CyclicDependence(EntityId),
    #[error("quality {quality} has several values at {at}: {qvas:?}")]
    AmbiguousValue {
        quality: EntityId,
        at: TimePoint,
        qvas: Vec<EntityId>,
    },
    #[error("endurant {endurant} has two qualities named {name:?}")]
    AttributeNameClash { endurant: EntityId, name: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum AllenRelation {
    Before,
    After,
    Meets,
    MetBy,
    Overlaps,
    OverlappedBy,
    Starts,
    StartedBy,
    During,
    Contains,
    Finishes,
    FinishedBy,
    Equals,
}

impl AllenRelation {
    pub const ALL: [AllenRelation; 13] = [
        AllenRelation::Before,
        AllenRelation::After,
        AllenRelation::Meets,
        AllenRelation::MetBy,
        AllenRelation::Overlaps,
        AllenRelation::OverlappedBy,
        AllenRelation::Starts,
        AllenRelation::StartedBy,
        AllenRelation::During,
        AllenRelation::Contains,
        AllenRelation::Finishes,
        AllenRelation::FinishedBy,
        AllenRelation::Equals,
    ];

    pub fn converse(self) -> AllenRelation {
        use AllenRelation::*;
        match self {
            Before => After,
            After => Before,
            Meets => MetBy,
            MetBy => Meets,
            Overlaps => OverlappedBy,
            OverlappedBy => Overlaps,
            Starts => StartedBy,
            StartedBy => Starts,
            During => Contains,
            Contains => During,
            Finishes => FinishedBy,
            FinishedBy => Finishes,
            Equals => Equals,
        }
    }
}

impl fmt::Display for AllenRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// How intervals with `begin == end` are treated by [`allen_relation`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PointPolicy {
    Reject,
    /// Points are compared endpoint-wise; a point never meets or overlaps.
    #[default]
    Coarse,
}

/// Allen relation of `a` with respect to `b` under the default point policy.
pub fn allen_relation(a: &TimeInterval, b: &TimeInterval) -> Result<AllenRelation, TemporalError> {
    allen_relation_with(a, b, PointPolicy::default())
}

pub fn allen_relation_with(
    a: &TimeInterval,
    b: &TimeInterval,
    policy: PointPolicy,
) -> Result<AllenRelation, TemporalError> {
    let (a_end, b_end) = match (a.end, b.end) {
        (Some(x), Some(y)) => (x, y),
        (None, _) => return Err(TemporalError::OpenInterval(*a)),
        (_, None) => return Err(TemporalError::OpenInterval(*b)),
    };
    if policy == PointPolicy::Reject {
        for iv in [a, b] {
            if iv.is_point() {
                return Err(TemporalError::DegenerateInterval(*iv));
            }
        }
    }
    Ok(classify(a.begin, a_end, b.begin, b_end))
}

// The order of the tests matters only for points, where several endpoint
// patterns coincide; for proper intervals exactly one branch can match.
fn classify(a0: TimePoint, a1: TimePoint, b0: TimePoint, b1: TimePoint) -> AllenRelation {
    use AllenRelation::*;
    if a0 == b0 && a1 == b1 {
        Equals
    } else if a1 < b0 {
        Before
    } else if b1 < a0 {
        After
    } else if a0 == b0 {
        if a1 < b1 {
            Starts
        } else {
            StartedBy
        }
    } else if a1 == b1 {
        if a0 > b0 {
            Finishes
        } else {
            FinishedBy
        }
    } else if a0 > b0 && a1 < b1 {
        During
    } else if a0 < b0 && a1 > b1 {
        Contains
    } else if a1 == b0 {
        Meets
    } else if a0 == b1 {
        MetBy
    } else if a0 < b0 {
        Overlaps
    } else {
        OverlappedBy
    }
}

/// Allen relation between the intervals of two events.
pub fn event_allen(graph: &GocedGraph, e1: &str, e2: &str) -> Result<AllenRelation, TemporalError> {
    let a = graph.require_event(e1)?.interval();
    let b = graph.require_event(e2)?.interval();
    allen_relation(&a, &b)
}

/// Consecutive event pairs in an object's history.
///
/// Events linked to the object (by any E2O kind) are ordered by
/// `(begin, end, id)`. Each adjacent pair `(e, f)` is reported when
/// `e.end <= f.begin`; overlapping neighbours are not in succession.
pub fn directly_follows(
    graph: &GocedGraph,
    object: &str,
) -> Result<Vec<(EntityId, EntityId)>, TemporalError> {
    let endurant = graph.require_endurant(object)?;
    if endurant.category != EndurantCategory::Object {
        return Err(QueryError::NotAnObject(object.into()).into());
    }
    let mut events: Vec<_> = graph
        .events_of(object)
        .filter_map(|id| graph.event(id.as_str()))
        .collect();
    events.sort_by(|x, y| (x.begin, x.end, &x.id).cmp(&(y.begin, y.end, &y.id)));
    Ok(events
        .windows(2)
        .filter(|w| w[0].end <= w[1].begin)
        .map(|w| (w[0].id.clone(), w[1].id.clone()))
        .collect())
}

/// Transitive closure of historical dependence as `(dependent, dependee)`
/// pairs. A cycle is an error.
pub fn hd_closure(graph: &GocedGraph) -> Result<BTreeSet<(EntityId, EntityId)>, TemporalError> {
    transitive_closure(
        graph
            .e2e_links()
            .filter(|l| l.kind == E2EKind::HistoricallyDependsOn)
            .map(|l| (&l.source, &l.target)),
    )
}

/// Transitive closure of a finite relation, rejecting cycles.
pub fn transitive_closure<'a, I>(edges: I) -> Result<BTreeSet<(EntityId, EntityId)>, TemporalError>
where
    I: IntoIterator<Item = (&'a EntityId, &'a EntityId)>,
{
    let mut succ: BTreeMap<&EntityId, BTreeSet<&EntityId>> = BTreeMap::new();
    for (from, to) in edges {
        if from == to {
            return Err(TemporalError::CyclicDependence(from.clone()));
        }
        succ.entry(from).or_default().insert(to);
    }

    // Depth-first post-order; each node's reach is the union of its
    // successors' reaches, which are complete once the successor finishes.
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Active,
        Done,
    }
    let mut mark: BTreeMap<&EntityId, Mark> = BTreeMap::new();
    let mut reach: BTreeMap<&EntityId, BTreeSet<&EntityId>> = BTreeMap::new();
    let empty = BTreeSet::new();
    for &root in succ.keys() {
        if mark.contains_key(root) {
            continue;
        }
        let mut stack: Vec<(&EntityId, Vec<&EntityId>)> =
            vec![(root, succ[root].iter().copied().collect())];
        mark.insert(root, Mark::Active);
        while let Some((node, children)) = stack.last_mut() {
            let (node, next) = (*node, children.pop());
            if let Some(child) = next {
                match mark.get(child) {
                    Some(Mark::Active) => {
                        return Err(TemporalError::CyclicDependence(child.clone()))
                    }
                    Some(Mark::Done) => {}
                    None => {
                        mark.insert(child, Mark::Active);
                        let grand = succ.get(child).unwrap_or(&empty).iter().copied().collect();
                        stack.push((child, grand));
                    }
                }
            } else {
                let mut r = BTreeSet::new();
                for &s in succ.get(node).unwrap_or(&empty) {
                    r.insert(s);
                    if let Some(sr) = reach.get(s) {
                        r.extend(sr.iter().copied());
                    }
                }
                reach.insert(node, r);
                mark.insert(node, Mark::Done);
                stack.pop();
            }
        }
    }
    Ok(reach
        .into_iter()
        .flat_map(|(from, tos)| tos.into_iter().map(move |to| (from.clone(), to.clone())))
        .collect())
}

/// Attribute values of an endurant at one instant.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Snapshot {
    pub endurant: EntityId,
    pub at: TimePoint,
    pub values: BTreeMap<String, Scalar>,
}

/// The value of every quality of `endurant` at `at`. A QVAS valid at `at`
/// takes precedence over the quality's static value.
pub fn snapshot(graph: &GocedGraph, endurant: &str, at: TimePoint) -> Result<Snapshot, TemporalError> {
    graph.require_endurant(endurant)?;
    let mut values = BTreeMap::new();
    for qid in graph.qualities_of(endurant) {
        let quality = graph.require_endurant(qid.as_str())?;
        let covering: Vec<&Qvas> = graph
            .qvas_of(qid.as_str())
            .filter_map(|v| graph.qvas(v.as_str()))
            .filter(|v| v.validity.contains_half_open(at))
            .collect();
        let value = match covering.as_slice() {
            [] => quality.static_value.clone(),
            [single] => Some(single.value.clone()),
            many => {
                return Err(TemporalError::AmbiguousValue {
                    quality: qid.clone(),
                    at,
                    qvas: many.iter().map(|v| v.id.clone()).collect(),
                })
            }
        };
        let Some(value) = value else { continue };
        let name = graph.quality_name(quality).to_string();
        if values.insert(name.clone(), value).is_some() {
            return Err(TemporalError::AttributeNameClash {
                endurant: endurant.into(),
                name,
            });
        }
    }
    Ok(Snapshot {
        endurant: endurant.into(),
        at,
        values,
    })
}

/// All QVAS of a quality, ordered by validity begin then id.
pub fn qvas_history<'g>(graph: &'g GocedGraph, quality: &str) -> Result<Vec<&'g Qvas>, TemporalError> {
    let q = graph.require_endurant(quality)?;
    if q.category != EndurantCategory::Quality {
        return Err(QueryError::NotAQuality(quality.into()).into());
    }
    let mut history: Vec<&Qvas> = graph
        .qvas_of(quality)
        .filter_map(|v| graph.qvas(v.as_str()))
        .collect();
    history.sort_by(|a, b| (a.validity.begin, &a.id).cmp(&(b.validity.begin, &b.id)));
    Ok(history)
}
