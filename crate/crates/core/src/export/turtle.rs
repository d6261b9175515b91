//! Turtle output using gUFO terms, and a reader for exactly the subset of
//! Turtle this module writes.
//!
//! Individuals are named `<base><segment>/<percent-encoded id>`; the base is
//! declared as the `inst:` prefix so a document can be read back without
//! knowing it in advance. One statement per line, sorted by subject,
//! predicate and object.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use percent_encoding::{percent_decode_str, utf8_percent_encode, AsciiSet, NON_ALPHANUMERIC};

use super::vocab::{gufo, segment, xsd, INSTANCE_PREFIX, PREFIXES, RDFS_LABEL, RDF_TYPE};
use super::{ExportError, GUFO, RDF, RDFS, XSD};
use crate::model::{
    E2EKind, E2ELink, E2OKind, E2OLink, Element, Endurant, EndurantCategory, EndurantType,
    EntityId, Event, EventType, GocedGraph, Link, Qvas, QvasEventKind, QvasEventLink, Scalar,
    SortalCategory, TimeInterval, TimePoint,
};

const ID_ESCAPES: &AsciiSet = &NON_ALPHANUMERIC
    .remove(b'-')
    .remove(b'.')
    .remove(b'_')
    .remove(b'~');

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TurtleDocument {
    pub text: String,
}

impl TurtleDocument {
    pub fn as_str(&self) -> &str {
        &self.text
    }
}

impl std::fmt::Display for TurtleDocument {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Term {
    Iri(String),
    Literal {
        lexical: String,
        datatype: Option<String>,
    },
}

impl Term {
    fn iri(ns: &str, local: &str) -> Term {
        Term::Iri(format!("{ns}{local}"))
    }

    fn typed(lexical: impl Into<String>, datatype: &str) -> Term {
        Term::Literal {
            lexical: lexical.into(),
            datatype: Some(format!("{XSD}{datatype}")),
        }
    }

    fn time(t: TimePoint) -> Term {
        Term::typed(t.to_string(), xsd::DATE_TIME_STAMP)
    }

    fn scalar(value: &Scalar) -> Term {
        match value {
            Scalar::Str(s) => Term::Literal {
                lexical: s.clone(),
                datatype: None,
            },
            Scalar::Int(i) => Term::typed(i.to_string(), xsd::INTEGER),
            Scalar::Float(f) => Term::typed(format!("{f:?}"), xsd::DOUBLE),
            Scalar::Bool(b) => Term::typed(b.to_string(), xsd::BOOLEAN),
        }
    }

    /// N-Triples form, used as the sort key for objects.
    fn sort_key(&self) -> String {
        match self {
            Term::Iri(iri) => format!("<{iri}>"),
            Term::Literal { lexical, datatype } => match datatype {
                Some(dt) => format!("\"{}\"^^<{dt}>", escape(lexical)),
                None => format!("\"{}\"", escape(lexical)),
            },
        }
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if c.is_control() => {
                let _ = write!(out, "\\u{:04X}", c as u32);
            }
            c => out.push(c),
        }
    }
    out
}

/// Compact form of an IRI: a prefixed name for vocabulary terms, `<...>`
/// otherwise.
fn compact(iri: &str) -> String {
    for (prefix, ns) in PREFIXES {
        if let Some(local) = iri.strip_prefix(ns) {
            if !local.is_empty() && local.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return format!("{prefix}:{local}");
            }
        }
    }
    format!("<{iri}>")
}

fn render(term: &Term) -> String {
    match term {
        Term::Iri(iri) => compact(iri),
        Term::Literal { lexical, datatype } => match datatype {
            Some(dt) => format!("\"{}\"^^{}", escape(lexical), compact(dt)),
            None => format!("\"{}\"", escape(lexical)),
        },
    }
}

fn check_base_iri(base: &str) -> Result<(), ExportError> {
    let invalid = || ExportError::InvalidBaseIri(base.to_string());
    let (scheme, rest) = base.split_once(':').ok_or_else(invalid)?;
    let scheme_ok = scheme
        .chars()
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic())
        && scheme
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'));
    let chars_ok = base
        .chars()
        .all(|c| !c.is_whitespace() && !c.is_control() && !"<>\"{}|^`\\".contains(c));
    if !scheme_ok || !chars_ok || rest.is_empty() || !(base.ends_with('/') || base.ends_with('#')) {
        return Err(invalid());
    }
    Ok(())
}

struct Writer<'a> {
    base: &'a str,
    triples: Vec<(String, String, Term)>,
}

impl Writer<'_> {
    fn individual(&self, seg: &str, id: &EntityId) -> String {
        format!("{}{seg}/{}", self.base, utf8_percent_encode(id.as_str(), ID_ESCAPES))
    }

    fn add(&mut self, subject: &str, ns: &str, local: &str, object: Term) {
        self.triples
            .push((subject.to_string(), format!("{ns}{local}"), object));
    }
}

fn endurant_segment(category: EndurantCategory) -> &'static str {
    match category {
        EndurantCategory::Object => segment::OBJECT,
        EndurantCategory::Quality => segment::QUALITY,
        EndurantCategory::Relator => segment::RELATOR,
    }
}

fn endurant_class(category: EndurantCategory) -> &'static str {
    match category {
        EndurantCategory::Object => gufo::OBJECT,
        EndurantCategory::Quality => gufo::QUALITY,
        EndurantCategory::Relator => gufo::RELATOR,
    }
}

fn sortal_class(sortal: SortalCategory) -> &'static str {
    match sortal {
        SortalCategory::Kind => gufo::KIND,
        SortalCategory::Phase => gufo::PHASE,
        SortalCategory::Role => gufo::ROLE,
        SortalCategory::Unspecified => gufo::ENDURANT_TYPE,
    }
}

/// Serializes a graph to Turtle. Output is a pure function of the graph
/// and the base IRI, which must be absolute and end in `/` or `#`.
pub fn to_turtle(graph: &GocedGraph, base_iri: &str) -> Result<TurtleDocument, ExportError> {
    check_base_iri(base_iri)?;
    let mut w = Writer {
        base: base_iri,
        triples: Vec::new(),
    };
    // segment of every endurant, for link objects
    let endurant_iri = |w: &Writer, id: &EntityId| {
        let seg = graph
            .endurant(id.as_str())
            .map_or(segment::OBJECT, |e| endurant_segment(e.category));
        w.individual(seg, id)
    };

    for t in graph.endurant_types() {
        let s = w.individual(segment::ENDURANT_TYPE, &t.id);
        w.add(&s, RDF, RDF_TYPE, Term::iri(GUFO, sortal_class(t.sortal)));
        w.add(&s, RDFS, RDFS_LABEL, Term::scalar(&Scalar::Str(t.name.clone())));
    }
    for t in graph.event_types() {
        let s = w.individual(segment::EVENT_TYPE, &t.id);
        w.add(&s, RDF, RDF_TYPE, Term::iri(GUFO, gufo::EVENT_TYPE));
        w.add(&s, RDFS, RDFS_LABEL, Term::scalar(&Scalar::Str(t.name.clone())));
    }
    for e in graph.endurants() {
        let s = endurant_iri(&w, &e.id);
        w.add(&s, RDF, RDF_TYPE, Term::iri(GUFO, endurant_class(e.category)));
        let type_iri = w.individual(segment::ENDURANT_TYPE, &e.type_ref);
        w.add(&s, RDF, RDF_TYPE, Term::Iri(type_iri));
        if let Some(label) = &e.label {
            w.add(&s, RDFS, RDFS_LABEL, Term::scalar(&Scalar::Str(label.clone())));
        }
        if let Some(existence) = &e.existence {
            w.add(&s, GUFO, gufo::BEGIN, Term::time(existence.begin));
            if let Some(end) = existence.end {
                w.add(&s, GUFO, gufo::END, Term::time(end));
            }
        }
        if let Some(host) = &e.inheres_in {
            let o = endurant_iri(&w, host);
            w.add(&s, GUFO, gufo::INHERES_IN, Term::Iri(o));
        }
        for m in &e.mediates {
            let o = endurant_iri(&w, m);
            w.add(&s, GUFO, gufo::MEDIATES, Term::Iri(o));
        }
        if let Some(v) = &e.static_value {
            w.add(&s, GUFO, gufo::HAS_QUALITY_VALUE, Term::scalar(v));
        }
    }
    for e in graph.events() {
        let s = w.individual(segment::EVENT, &e.id);
        w.add(&s, RDF, RDF_TYPE, Term::iri(GUFO, gufo::EVENT));
        let type_iri = w.individual(segment::EVENT_TYPE, &e.type_ref);
        w.add(&s, RDF, RDF_TYPE, Term::Iri(type_iri));
        w.add(&s, GUFO, gufo::BEGIN, Term::time(e.begin));
        w.add(&s, GUFO, gufo::END, Term::time(e.end));
        for (name, value) in &e.attributes {
            let attr = format!(
                "{}{}/{}/{}",
                w.base,
                segment::EVENT_ATTRIBUTE,
                utf8_percent_encode(e.id.as_str(), ID_ESCAPES),
                utf8_percent_encode(name, ID_ESCAPES)
            );
            w.add(&attr, RDF, RDF_TYPE, Term::iri(GUFO, gufo::QUALITY));
            w.add(&attr, GUFO, gufo::INHERES_IN, Term::Iri(s.clone()));
            w.add(&attr, RDFS, RDFS_LABEL, Term::scalar(&Scalar::Str(name.clone())));
            w.add(&attr, GUFO, gufo::HAS_QUALITY_VALUE, Term::scalar(value));
        }
    }
    for q in graph.qvass() {
        let s = w.individual(segment::QVAS, &q.id);
        w.add(&s, RDF, RDF_TYPE, Term::iri(GUFO, gufo::QVAS));
        let quality = endurant_iri(&w, &q.quality_ref);
        w.add(&s, GUFO, gufo::CONCERNS, Term::Iri(quality));
        if let Some(qt) = graph.endurant(q.quality_ref.as_str()).map(|e| &e.type_ref) {
            let type_iri = w.individual(segment::ENDURANT_TYPE, qt);
            w.add(&s, GUFO, gufo::CONCERNS_QUALITY_TYPE, Term::Iri(type_iri));
        }
        w.add(&s, GUFO, gufo::CONCERNS_QUALITY_VALUE, Term::scalar(&q.value));
        w.add(&s, GUFO, gufo::BEGIN, Term::time(q.validity.begin));
        if let Some(end) = q.validity.end {
            w.add(&s, GUFO, gufo::END, Term::time(end));
        }
    }
    for l in graph.e2o_links() {
        let s = endurant_iri(&w, &l.endurant);
        let p = match l.kind {
            E2OKind::Created => gufo::CREATED_IN,
            E2OKind::Terminated => gufo::TERMINATED_IN,
            E2OKind::Participated => gufo::PARTICIPATED_IN,
        };
        let o = w.individual(segment::EVENT, &l.event);
        w.add(&s, GUFO, p, Term::Iri(o));
    }
    for l in graph.e2e_links() {
        let s = w.individual(segment::EVENT, &l.source);
        let p = match l.kind {
            E2EKind::ProperPartOf => gufo::PART_OF,
            E2EKind::HistoricallyDependsOn => gufo::DEPENDS_ON,
        };
        let o = w.individual(segment::EVENT, &l.target);
        w.add(&s, GUFO, p, Term::Iri(o));
    }
    for l in graph.qvas_event_links() {
        let event = w.individual(segment::EVENT, &l.event);
        let qvas = w.individual(segment::QVAS, &l.qvas);
        match l.kind {
            QvasEventKind::BroughtAbout => {
                w.add(&event, GUFO, gufo::BROUGHT_ABOUT, Term::Iri(qvas))
            }
            QvasEventKind::ContributedToTrigger => {
                w.add(&qvas, GUFO, gufo::CONTRIBUTED_TO_TRIGGER, Term::Iri(event))
            }
        }
    }

    let mut keyed: Vec<(String, String, String, Term)> = w
        .triples
        .into_iter()
        .map(|(s, p, o)| (s, p, o.sort_key(), o))
        .collect();
    keyed.sort();
    keyed.dedup_by(|a, b| a.0 == b.0 && a.1 == b.1 && a.2 == b.2);

    let mut prefixes: Vec<(&str, &str)> = PREFIXES.to_vec();
    prefixes.push((INSTANCE_PREFIX, base_iri));
    prefixes.sort();
    let mut text = String::new();
    for (prefix, ns) in prefixes {
        let _ = writeln!(text, "@prefix {prefix}: <{ns}> .");
    }
    if !keyed.is_empty() {
        text.push('\n');
    }
    for (s, p, _, o) in &keyed {
        let _ = writeln!(text, "<{s}> {} {} .", compact(p), render(o));
    }
    Ok(TurtleDocument { text })
}

// ---------------------------------------------------------------------------
// Reading

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Prefix,
    A,
    Dot,
    Iri(String),
    PName(String, String),
    Literal(String, Option<Box<Token>>),
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    line: usize,
    // a prefixed name swallowed the statement's closing dot
    put_back_dot: bool,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.char_indices().peekable(),
            line: 1,
            put_back_dot: false,
        }
    }

    fn syntax(&self, message: impl Into<String>) -> ExportError {
        ExportError::Syntax {
            line: self.line,
            message: message.into(),
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next().map(|(_, c)| c);
        if c == Some('\n') {
            self.line += 1;
        }
        c
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().map(|(_, c)| *c)
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn hex(&mut self, digits: usize) -> Result<char, ExportError> {
        let mut v = 0u32;
        for _ in 0..digits {
            let d = self
                .bump()
                .and_then(|c| c.to_digit(16))
                .ok_or_else(|| self.syntax("bad unicode escape"))?;
            v = v * 16 + d;
        }
        char::from_u32(v).ok_or_else(|| self.syntax("invalid code point"))
    }

    fn iri(&mut self) -> Result<String, ExportError> {
        let mut out = String::new();
        loop {
            match self.bump() {
                Some('>') => return Ok(out),
                Some('\\') => match self.bump() {
                    Some('u') => out.push(self.hex(4)?),
                    Some('U') => out.push(self.hex(8)?),
                    _ => return Err(self.syntax("bad escape in IRI")),
                },
                Some(c) if c.is_whitespace() || "<\"{}|^`".contains(c) => {
                    return Err(self.syntax(format!("character {c:?} not allowed in IRI")))
                }
                Some(c) => out.push(c),
                None => return Err(self.syntax("unterminated IRI")),
            }
        }
    }

    fn string(&mut self) -> Result<String, ExportError> {
        if self.peek() == Some('"') {
            self.bump();
            if self.peek() == Some('"') {
                return Err(ExportError::UnsupportedConstruct("long string literal".into()));
            }
            return Ok(String::new());
        }
        let mut out = String::new();
        loop {
            match self.bump() {
                Some('"') => return Ok(out),
                Some('\\') => match self.bump() {
                    Some('t') => out.push('\t'),
                    Some('b') => out.push('\u{8}'),
                    Some('n') => out.push('\n'),
                    Some('r') => out.push('\r'),
                    Some('f') => out.push('\u{c}'),
                    Some('"') => out.push('"'),
                    Some('\'') => out.push('\''),
                    Some('\\') => out.push('\\'),
                    Some('u') => out.push(self.hex(4)?),
                    Some('U') => out.push(self.hex(8)?),
                    _ => return Err(self.syntax("bad string escape")),
                },
                Some('\n') | Some('\r') | None => return Err(self.syntax("unterminated string")),
                Some(c) => out.push(c),
            }
        }
    }

    fn name(&mut self, first: char) -> String {
        let mut out = String::from(first);
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | ':' | '%') {
                out.push(c);
                self.bump();
            } else {
                break;
            }
        }
        out
    }

    fn next_token(&mut self) -> Result<Option<Token>, ExportError> {
        self.skip_trivia();
        let Some(c) = self.bump() else {
            return Ok(None);
        };
        let token = match c {
            '<' => Token::Iri(self.iri()?),
            '"' => {
                let lexical = self.string()?;
                match self.peek() {
                    Some('^') => {
                        self.bump();
                        if self.bump() != Some('^') {
                            return Err(self.syntax("expected ^^"));
                        }
                        let dt = match self.next_token()? {
                            Some(t @ (Token::Iri(_) | Token::PName(..))) => t,
                            _ => return Err(self.syntax("expected datatype IRI")),
                        };
                        Token::Literal(lexical, Some(Box::new(dt)))
                    }
                    Some('@') => {
                        return Err(ExportError::UnsupportedConstruct(
                            "language-tagged literal".into(),
                        ))
                    }
                    _ => Token::Literal(lexical, None),
                }
            }
            '.' => Token::Dot,
            '@' => {
                let word = self.name('@');
                if word == "@prefix" {
                    Token::Prefix
                } else {
                    return Err(ExportError::UnsupportedConstruct(format!("directive {word}")));
                }
            }
            ';' | ',' | '[' | ']' | '(' | ')' | '\'' => {
                return Err(ExportError::UnsupportedConstruct(format!("token {c:?}")))
            }
            c if c.is_alphanumeric() || c == '_' || c == ':' => {
                let mut word = self.name(c);
                // a trailing dot ends the statement
                while word.ends_with('.') {
                    word.pop();
                    self.put_back_dot = true;
                }
                match word.split_once(':') {
                    Some((p, l)) => Token::PName(p.to_string(), l.to_string()),
                    None if word == "a" => Token::A,
                    None => return Err(ExportError::UnsupportedConstruct(format!("keyword {word}"))),
                }
            }
            c => return Err(self.syntax(format!("unexpected character {c:?}"))),
        };
        Ok(Some(token))
    }
}

/// Parsed document: prefix table plus statements with expanded IRIs.
struct Parsed {
    prefixes: BTreeMap<String, String>,
    triples: Vec<(String, String, Term)>,
}

fn parse(text: &str) -> Result<Parsed, ExportError> {
    let mut lexer = Lexer::new(text);
    let mut tokens: Vec<(usize, Token)> = Vec::new();
    loop {
        let t = lexer.next_token()?;
        let line = lexer.line;
        match t {
            Some(t) => tokens.push((line, t)),
            None => break,
        }
        if std::mem::take(&mut lexer.put_back_dot) {
            tokens.push((line, Token::Dot));
        }
    }

    let mut prefixes = BTreeMap::new();
    let mut triples = Vec::new();
    let mut i = 0;
    let err = |line: usize, m: &str| ExportError::Syntax {
        line,
        message: m.to_string(),
    };
    let resolve = |prefixes: &BTreeMap<String, String>, line: usize, t: &Token| -> Result<String, ExportError> {
        match t {
            Token::Iri(iri) => Ok(iri.clone()),
            Token::PName(p, l) => prefixes
                .get(p)
                .map(|ns| format!("{ns}{l}"))
                .ok_or_else(|| err(line, &format!("undeclared prefix {p:?}"))),
            Token::A => Ok(format!("{RDF}{RDF_TYPE}")),
            _ => Err(err(line, "expected an IRI")),
        }
    };
    while i < tokens.len() {
        let (line, first) = &tokens[i];
        if *first == Token::Prefix {
            match tokens.get(i + 1..i + 4) {
                Some([(_, Token::PName(p, l)), (_, Token::Iri(ns)), (_, Token::Dot)]) if l.is_empty() => {
                    prefixes.insert(p.clone(), ns.clone());
                }
                _ => return Err(err(*line, "malformed @prefix")),
            }
            i += 4;
            continue;
        }
        let Some([(_, s), (_, p), (_, o), (_, Token::Dot)]) = tokens.get(i..i + 4) else {
            return Err(err(*line, "expected subject predicate object ."));
        };
        if matches!(s, Token::A) {
            return Err(err(*line, "'a' is not a subject"));
        }
        let s = resolve(&prefixes, *line, s)?;
        let p = resolve(&prefixes, *line, p)?;
        let o = match o {
            Token::Literal(lexical, dt) => Term::Literal {
                lexical: lexical.clone(),
                datatype: dt.as_deref().map(|d| resolve(&prefixes, *line, d)).transpose()?,
            },
            Token::A => return Err(err(*line, "'a' is not an object")),
            other => Term::Iri(resolve(&prefixes, *line, other)?),
        };
        triples.push((s, p, o));
        i += 4;
    }
    Ok(Parsed { prefixes, triples })
}

fn scalar_of(term: &Term) -> Result<Scalar, ExportError> {
    let Term::Literal { lexical, datatype } = term else {
        return Err(ExportError::UnsupportedConstruct("expected a literal".into()));
    };
    let bad = |what: &str| ExportError::UnsupportedConstruct(format!("bad {what} literal {lexical:?}"));
    let dt = datatype.as_deref().and_then(|d| d.strip_prefix(XSD));
    match (datatype, dt) {
        (None, _) | (_, Some(xsd::STRING)) => Ok(Scalar::Str(lexical.clone())),
        (_, Some(xsd::INTEGER)) => lexical.parse().map(Scalar::Int).map_err(|_| bad("integer")),
        (_, Some(xsd::DOUBLE)) => match lexical.parse::<f64>() {
            Ok(f) if f.is_finite() => Ok(Scalar::Float(f)),
            _ => Err(bad("double")),
        },
        (_, Some(xsd::BOOLEAN)) => match lexical.as_str() {
            "true" | "1" => Ok(Scalar::Bool(true)),
            "false" | "0" => Ok(Scalar::Bool(false)),
            _ => Err(bad("boolean")),
        },
        (Some(d), _) => Err(ExportError::UnsupportedConstruct(format!("datatype <{d}>"))),
    }
}

fn time_of(term: &Term) -> Result<TimePoint, ExportError> {
    match term {
        Term::Literal {
            lexical,
            datatype: Some(dt),
        } if dt == &format!("{XSD}{}", xsd::DATE_TIME_STAMP) || dt == &format!("{XSD}dateTime") => {
            TimePoint::parse(lexical).map_err(|e| ExportError::UnsupportedConstruct(e.to_string()))
        }
        other => Err(ExportError::UnsupportedConstruct(format!(
            "expected a timestamp, found {}",
            other.sort_key()
        ))),
    }
}

#[derive(Default)]
struct Subject {
    classes: Vec<String>,
    types: Vec<EntityId>,
    label: Option<String>,
    begin: Option<TimePoint>,
    end: Option<TimePoint>,
    inheres_in: Option<EntityId>,
    mediates: BTreeSet<EntityId>,
    value: Option<Scalar>,
    concerns: Option<EntityId>,
}

fn set_once<T>(slot: &mut Option<T>, value: T, what: &str, subject: &str) -> Result<(), ExportError> {
    if slot.replace(value).is_some() {
        return Err(ExportError::UnsupportedConstruct(format!("{subject} has several {what} values")));
    }
    Ok(())
}

/// Reads a document written by [`to_turtle`] back into a graph.
pub fn from_turtle(text: &str) -> Result<GocedGraph, ExportError> {
    let parsed = parse(text)?;
    let mut graph = GocedGraph::with_min_mediation(1);
    if parsed.triples.is_empty() {
        return Ok(graph);
    }
    let base = parsed
        .prefixes
        .get(INSTANCE_PREFIX)
        .ok_or_else(|| ExportError::UnsupportedConstruct(format!("missing {INSTANCE_PREFIX}: prefix")))?
        .clone();

    let decode = |iri: &str| -> Result<(String, Vec<EntityId>), ExportError> {
        let rest = iri
            .strip_prefix(base.as_str())
            .ok_or_else(|| ExportError::UnsupportedConstruct(format!("foreign IRI <{iri}>")))?;
        let mut parts = rest.split('/');
        let seg = parts.next().unwrap_or_default().to_string();
        let ids = parts
            .map(|p| {
                percent_decode_str(p)
                    .decode_utf8()
                    .map(|s| EntityId::new(s.into_owned()))
                    .map_err(|_| ExportError::UnsupportedConstruct(format!("bad id in <{iri}>")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok((seg, ids))
    };
    let single = |iri: &str| -> Result<(String, EntityId), ExportError> {
        match decode(iri)? {
            (seg, ids) if ids.len() == 1 && !ids[0].as_str().is_empty() => {
                Ok((seg, ids.into_iter().next().expect("one id")))
            }
            _ => Err(ExportError::UnsupportedConstruct(format!("malformed individual <{iri}>"))),
        }
    };
    let object_id = |term: &Term| -> Result<EntityId, ExportError> {
        match term {
            Term::Iri(iri) => Ok(single(iri)?.1),
            _ => Err(ExportError::UnsupportedConstruct("expected an individual".into())),
        }
    };

    let mut subjects: BTreeMap<String, Subject> = BTreeMap::new();
    let mut attributes: BTreeMap<EntityId, Vec<(String, Subject)>> = BTreeMap::new();
    let mut links: Vec<Link> = Vec::new();
    let mut attribute_subjects: BTreeMap<String, Subject> = BTreeMap::new();

    for (s, p, o) in &parsed.triples {
        let (seg, _) = decode(s)?;
        let slot = if seg == segment::EVENT_ATTRIBUTE {
            attribute_subjects.entry(s.clone()).or_default()
        } else {
            subjects.entry(s.clone()).or_default()
        };
        let pred = if let Some(local) = p.strip_prefix(GUFO) {
            local
        } else if p == &format!("{RDF}{RDF_TYPE}") {
            match o {
                Term::Iri(iri) if iri.starts_with(GUFO) => slot.classes.push(iri[GUFO.len()..].to_string()),
                Term::Iri(iri) => slot.types.push(single(iri)?.1),
                _ => return Err(ExportError::UnsupportedConstruct("literal rdf:type".into())),
            }
            continue;
        } else if p == &format!("{RDFS}{RDFS_LABEL}") {
            let Scalar::Str(label) = scalar_of(o)? else {
                return Err(ExportError::UnsupportedConstruct("non-string label".into()));
            };
            set_once(&mut slot.label, label, "label", s)?;
            continue;
        } else {
            return Err(ExportError::UnsupportedConstruct(format!("predicate <{p}>")));
        };
        match pred {
            gufo::BEGIN => set_once(&mut slot.begin, time_of(o)?, "begin", s)?,
            gufo::END => set_once(&mut slot.end, time_of(o)?, "end", s)?,
            gufo::INHERES_IN => set_once(&mut slot.inheres_in, object_id(o)?, "host", s)?,
            gufo::MEDIATES => {
                slot.mediates.insert(object_id(o)?);
            }
            gufo::HAS_QUALITY_VALUE | gufo::CONCERNS_QUALITY_VALUE => {
                set_once(&mut slot.value, scalar_of(o)?, "value", s)?
            }
            gufo::CONCERNS => set_once(&mut slot.concerns, object_id(o)?, "quality", s)?,
            gufo::CONCERNS_QUALITY_TYPE => {}
            gufo::CREATED_IN | gufo::TERMINATED_IN | gufo::PARTICIPATED_IN => {
                let kind = match pred {
                    gufo::CREATED_IN => E2OKind::Created,
                    gufo::TERMINATED_IN => E2OKind::Terminated,
                    _ => E2OKind::Participated,
                };
                links.push(E2OLink::new(object_id(o)?, single(s)?.1, kind).into());
            }
            gufo::PART_OF => links.push(E2ELink::part_of(single(s)?.1, object_id(o)?).into()),
            gufo::DEPENDS_ON => links.push(E2ELink::depends_on(single(s)?.1, object_id(o)?).into()),
            gufo::BROUGHT_ABOUT => links.push(
                QvasEventLink::new(single(s)?.1, object_id(o)?, QvasEventKind::BroughtAbout).into(),
            ),
            gufo::CONTRIBUTED_TO_TRIGGER => links.push(
                QvasEventLink::new(object_id(o)?, single(s)?.1, QvasEventKind::ContributedToTrigger)
                    .into(),
            ),
            other => return Err(ExportError::UnsupportedConstruct(format!("predicate gufo:{other}"))),
        }
    }

    for (iri, attr) in attribute_subjects {
        let (_, ids) = decode(&iri)?;
        let [event, name] = ids.as_slice() else {
            return Err(ExportError::UnsupportedConstruct(format!("malformed attribute <{iri}>")));
        };
        if attr.classes != [gufo::QUALITY] || attr.inheres_in.as_ref() != Some(event) {
            return Err(ExportError::UnsupportedConstruct(format!("malformed attribute <{iri}>")));
        }
        if attr.label.as_deref() != Some(name.as_str()) {
            return Err(ExportError::UnsupportedConstruct(format!("attribute <{iri}> label mismatch")));
        }
        attributes
            .entry(event.clone())
            .or_default()
            .push((name.to_string(), attr));
    }

    let mut elements: Vec<Element> = Vec::new();
    for (iri, mut subj) in subjects {
        let (seg, id) = single(&iri)?;
        let class = match subj.classes.as_slice() {
            [c] => c.clone(),
            [] if subj.types.is_empty() && subj.label.is_none() => continue, // links only
            _ => {
                return Err(ExportError::UnsupportedConstruct(format!(
                    "<{iri}> needs exactly one gUFO class"
                )))
            }
        };
        let missing = |what: &str| ExportError::UnsupportedConstruct(format!("<{iri}> has no {what}"));
        let one_type = |types: &[EntityId]| match types {
            [t] => Ok(t.clone()),
            _ => Err(ExportError::UnsupportedConstruct(format!("<{iri}> needs exactly one type"))),
        };
        let element: Element = match (seg.as_str(), class.as_str()) {
            (segment::ENDURANT_TYPE, c) => {
                let sortal = match c {
                    gufo::KIND => SortalCategory::Kind,
                    gufo::PHASE => SortalCategory::Phase,
                    gufo::ROLE => SortalCategory::Role,
                    gufo::ENDURANT_TYPE => SortalCategory::Unspecified,
                    other => return Err(ExportError::UnsupportedConstruct(format!("class gufo:{other}"))),
                };
                EndurantType::new(id, subj.label.ok_or_else(|| missing("label"))?, sortal).into()
            }
            (segment::EVENT_TYPE, gufo::EVENT_TYPE) => {
                EventType::new(id, subj.label.ok_or_else(|| missing("label"))?).into()
            }
            (segment::OBJECT, gufo::OBJECT)
            | (segment::QUALITY, gufo::QUALITY)
            | (segment::RELATOR, gufo::RELATOR) => {
                let category = match class.as_str() {
                    gufo::OBJECT => EndurantCategory::Object,
                    gufo::QUALITY => EndurantCategory::Quality,
                    _ => EndurantCategory::Relator,
                };
                let existence = match (subj.begin, subj.end) {
                    (Some(b), end) => Some(TimeInterval { begin: b, end }),
                    (None, None) => None,
                    (None, Some(_)) => return Err(missing("begin")),
                };
                Endurant {
                    id,
                    type_ref: one_type(&subj.types)?,
                    category,
                    label: subj.label,
                    existence,
                    inheres_in: subj.inheres_in,
                    mediates: subj.mediates,
                    static_value: subj.value,
                }
                .into()
            }
            (segment::EVENT, gufo::EVENT) => {
                let mut event = Event::new(
                    id.clone(),
                    one_type(&subj.types)?,
                    subj.begin.ok_or_else(|| missing("begin"))?,
                    subj.end.ok_or_else(|| missing("end"))?,
                );
                for (name, attr) in attributes.remove(&id).unwrap_or_default() {
                    event
                        .attributes
                        .insert(name, attr.value.ok_or_else(|| missing("attribute value"))?);
                }
                event.into()
            }
            (segment::QVAS, gufo::QVAS) => {
                let quality = subj.concerns.take().ok_or_else(|| missing("quality"))?;
                Qvas::new(
                    id,
                    quality,
                    subj.value.take().ok_or_else(|| missing("value"))?,
                    TimeInterval {
                        begin: subj.begin.ok_or_else(|| missing("begin"))?,
                        end: subj.end,
                    },
                )
                .into()
            }
            (seg, class) => {
                return Err(ExportError::UnsupportedConstruct(format!(
                    "individual of gufo:{class} under segment {seg:?}"
                )))
            }
        };
        elements.push(element);
    }
    if let Some(event) = attributes.keys().next() {
        return Err(ExportError::UnsupportedConstruct(format!(
            "attributes for unknown event {event}"
        )));
    }
    graph.insert_all(elements, links)?;
    Ok(graph)
}
