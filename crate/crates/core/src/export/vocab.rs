//! Namespaces and the gUFO terms used in exported documents.

pub const GUFO: &str = "http://purl.org/nemo/gufo#";
pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";

/// Prefix bound to the base IRI of exported individuals.
pub(crate) const INSTANCE_PREFIX: &str = "inst";

pub(crate) const PREFIXES: [(&str, &str); 4] =
    [("gufo", GUFO), ("rdf", RDF), ("rdfs", RDFS), ("xsd", XSD)];

pub(crate) mod gufo {
    pub(crate) const OBJECT: &str = "Object";
    pub(crate) const QUALITY: &str = "Quality";
    pub(crate) const RELATOR: &str = "Relator";
    pub(crate) const EVENT: &str = "Event";
    pub(crate) const QVAS: &str = "QualityValueAttributionSituation";
    pub(crate) const KIND: &str = "Kind";
    pub(crate) const PHASE: &str = "Phase";
    pub(crate) const ROLE: &str = "Role";
    pub(crate) const ENDURANT_TYPE: &str = "EndurantType";
    pub(crate) const EVENT_TYPE: &str = "EventType";
    pub(crate) const INHERES_IN: &str = "inheresIn";
    pub(crate) const MEDIATES: &str = "mediates";
    pub(crate) const HAS_QUALITY_VALUE: &str = "hasQualityValue";
    pub(crate) const CONCERNS: &str = "concerns";
    pub(crate) const CONCERNS_QUALITY_TYPE: &str = "concernsQualityType";
    pub(crate) const CONCERNS_QUALITY_VALUE: &str = "concernsQualityValue";
    pub(crate) const BEGIN: &str = "hasBeginPointInXSDDateTimeStamp";
    pub(crate) const END: &str = "hasEndPointInXSDDateTimeStamp";
    pub(crate) const PART_OF: &str = "isEventProperPartOf";
    pub(crate) const DEPENDS_ON: &str = "historicallyDependsOn";
    pub(crate) const CREATED_IN: &str = "wasCreatedIn";
    pub(crate) const TERMINATED_IN: &str = "wasTerminatedIn";
    pub(crate) const PARTICIPATED_IN: &str = "participatedIn";
    pub(crate) const BROUGHT_ABOUT: &str = "broughtAbout";
    pub(crate) const CONTRIBUTED_TO_TRIGGER: &str = "contributedToTrigger";
}

pub(crate) const RDF_TYPE: &str = "type";
pub(crate) const RDFS_LABEL: &str = "label";

pub(crate) mod xsd {
    pub(crate) const STRING: &str = "string";
    pub(crate) const INTEGER: &str = "integer";
    pub(crate) const DOUBLE: &str = "double";
    pub(crate) const BOOLEAN: &str = "boolean";
    pub(crate) const DATE_TIME_STAMP: &str = "dateTimeStamp";
}

/// IRI path segments distinguishing kinds of individuals.
pub(crate) mod segment {
    pub(crate) const ENDURANT_TYPE: &str = "endurantType";
    pub(crate) const EVENT_TYPE: &str = "eventType";
    pub(crate) const OBJECT: &str = "object";
    pub(crate) const QUALITY: &str = "quality";
    pub(crate) const RELATOR: &str = "relator";
    pub(crate) const EVENT: &str = "event";
    pub(crate) const QVAS: &str = "qvas";
    pub(crate) const EVENT_ATTRIBUTE: &str = "eventAttribute";
}
