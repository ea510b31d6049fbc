//! RDF data model: nodes, triples, and an indexed in-memory graph, plus a
//! Turtle subset parser, a deterministic serializer, and graph comparison
//! up to blank-node relabeling.

mod iso;
mod turtle;
mod writer;

pub use iso::compare_graphs;
pub use turtle::{parse_turtle, ParseError};
pub use writer::serialize_turtle;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::vocab::{RDF_LANG_STRING, XSD_STRING};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RdfError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid triple: {0}")]
    InvalidTriple(String),
}

/// An RDF literal. The language tag is only present for language-tagged
/// strings, whose datatype is always `rdf:langString`; the constructors on
/// [`Node`] maintain that coupling. Equality is (lexical form, datatype,
/// language) with no value-space canonicalization, so `"1.0"` and `"1.00"`
/// are distinct literals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    lexical: String,
    datatype: String,
    lang: Option<String>,
}

impl Literal {
    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn datatype(&self) -> &str {
        &self.datatype
    }

    pub fn lang(&self) -> Option<&str> {
        self.lang.as_deref()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Iri(String),
    Blank(String),
    Literal(Literal),
}

impl Node {
    pub fn iri(iri: impl Into<String>) -> Node {
        Node::Iri(iri.into())
    }

    pub fn blank(label: impl Into<String>) -> Node {
        Node::Blank(label.into())
    }

    /// Plain string literal (`xsd:string`).
    pub fn literal_str(lexical: impl Into<String>) -> Node {
        Node::Literal(Literal {
            lexical: lexical.into(),
            datatype: XSD_STRING.to_string(),
            lang: None,
        })
    }

    pub fn literal_typed(lexical: impl Into<String>, datatype: impl Into<String>) -> Node {
        Node::Literal(Literal {
            lexical: lexical.into(),
            datatype: datatype.into(),
            lang: None,
        })
    }

    pub fn literal_lang(lexical: impl Into<String>, lang: impl Into<String>) -> Node {
        Node::Literal(Literal {
            lexical: lexical.into(),
            datatype: RDF_LANG_STRING.to_string(),
            lang: Some(lang.into()),
        })
    }

    pub fn is_iri(&self) -> bool {
        matches!(self, Node::Iri(_))
    }

    pub fn is_blank(&self) -> bool {
        matches!(self, Node::Blank(_))
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Node::Literal(_))
    }

    pub fn as_iri(&self) -> Option<&str> {
        match self {
            Node::Iri(iri) => Some(iri),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Node::Literal(lit) => Some(lit),
            _ => None,
        }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Iri(iri) => write!(f, "<{iri}>"),
            Node::Blank(label) => write!(f, "_:{label}"),
            Node::Literal(lit) => {
                write!(f, "{:?}", lit.lexical)?;
                if let Some(lang) = &lit.lang {
                    write!(f, "@{lang}")
                } else if lit.datatype != XSD_STRING {
                    write!(f, "^^<{}>", lit.datatype)
                } else {
                    Ok(())
                }
            }
        }
    }
}

/// A subject-predicate-object statement. Predicates are always IRIs and
/// subjects are never literals; [`Triple::new`] enforces both.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub subject: Node,
    pub predicate: Node,
    pub object: Node,
}

impl Triple {
    pub fn new(subject: Node, predicate: Node, object: Node) -> Result<Triple, RdfError> {
        if subject.is_literal() {
            return Err(RdfError::InvalidTriple(format!(
                "subject must not be a literal: {subject}"
            )));
        }
        if !predicate.is_iri() {
            return Err(RdfError::InvalidTriple(format!(
                "predicate must be an IRI: {predicate}"
            )));
        }
        Ok(Triple {
            subject,
            predicate,
            object,
        })
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}

type TwoLevelIndex = BTreeMap<Node, BTreeMap<Node, BTreeSet<Node>>>;

/// A set of triples with a prefix map and three full permutation indexes
/// (SPO, POS, OSP), so that every bound-position lookup is a direct index
/// walk. Set semantics: inserting a duplicate triple is a no-op.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    spo: TwoLevelIndex,
    pos: TwoLevelIndex,
    osp: TwoLevelIndex,
    prefixes: BTreeMap<String, String>,
    len: usize,
}

impl Graph {
    pub fn new() -> Graph {
        Graph::default()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn set_prefix(&mut self, label: impl Into<String>, namespace: impl Into<String>) {
        self.prefixes.insert(label.into(), namespace.into());
    }

    pub fn prefixes(&self) -> &BTreeMap<String, String> {
        &self.prefixes
    }

    /// Returns true when the triple was not already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        let Triple {
            subject,
            predicate,
            object,
        } = triple;
        let added = self
            .spo
            .entry(subject.clone())
            .or_default()
            .entry(predicate.clone())
            .or_default()
            .insert(object.clone());
        if !added {
            return false;
        }
        self.pos
            .entry(predicate.clone())
            .or_default()
            .entry(object.clone())
            .or_default()
            .insert(subject.clone());
        self.osp
            .entry(object)
            .or_default()
            .entry(subject)
            .or_default()
            .insert(predicate);
        self.len += 1;
        true
    }

    /// Validate and insert in one step.
    pub fn insert_parts(&mut self, s: Node, p: Node, o: Node) -> Result<bool, RdfError> {
        Ok(self.insert(Triple::new(s, p, o)?))
    }

    pub fn remove(&mut self, triple: &Triple) -> bool {
        let removed = remove_indexed(&mut self.spo, &triple.subject, &triple.predicate, &triple.object);
        if !removed {
            return false;
        }
        remove_indexed(&mut self.pos, &triple.predicate, &triple.object, &triple.subject);
        remove_indexed(&mut self.osp, &triple.object, &triple.subject, &triple.predicate);
        self.len -= 1;
        true
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.spo
            .get(&triple.subject)
            .and_then(|p| p.get(&triple.predicate))
            .map(|o| o.contains(&triple.object))
            .unwrap_or(false)
    }

    pub fn contains_node(&self, node: &Node) -> bool {
        self.spo.contains_key(node)
            || self.pos.contains_key(node)
            || self.osp.contains_key(node)
    }

    /// Iterate all triples in (subject, predicate, object) order.
    pub fn iter(&self) -> impl Iterator<Item = Triple> + '_ {
        self.spo.iter().flat_map(|(s, pm)| {
            pm.iter().flat_map(move |(p, os)| {
                os.iter().map(move |o| Triple {
                    subject: s.clone(),
                    predicate: p.clone(),
                    object: o.clone(),
                })
            })
        })
    }

    /// All triples matching the bound positions; `None` is a wildcard.
    /// Results come back in (subject, predicate, object) order.
    pub fn match_triples(
        &self,
        s: Option<&Node>,
        p: Option<&Node>,
        o: Option<&Node>,
    ) -> Vec<Triple> {
        let mut out: Vec<Triple> = match (s, p, o) {
            (Some(s), Some(p), Some(o)) => {
                let t = Triple {
                    subject: s.clone(),
                    predicate: p.clone(),
                    object: o.clone(),
                };
                if self.contains(&t) {
                    vec![t]
                } else {
                    vec![]
                }
            }
            (Some(s), p, o) => scan_index(&self.spo, s, p, o, |a, b, c| (a, b, c)),
            (None, Some(p), o) => scan_index(&self.pos, p, o, None, |a, b, c| (c, a, b)),
            (None, None, Some(o)) => scan_index(&self.osp, o, None, None, |a, b, c| (b, c, a)),
            (None, None, None) => return self.iter().collect(),
        };
        out.sort();
        out
    }

    pub fn subjects(&self) -> impl Iterator<Item = &Node> {
        self.spo.keys()
    }

    /// Objects of `(subject, predicate, ?)`, in order.
    pub fn objects(&self, subject: &Node, predicate: &str) -> Vec<Node> {
        self.spo
            .get(subject)
            .and_then(|pm| pm.get(&Node::iri(predicate)))
            .map(|os| os.iter().cloned().collect())
            .unwrap_or_default()
    }

    /// First object of `(subject, predicate, ?)`, if any.
    pub fn object(&self, subject: &Node, predicate: &str) -> Option<Node> {
        self.objects(subject, predicate).into_iter().next()
    }

    /// Merge all triples (and prefixes) of `other` into `self`.
    pub fn absorb(&mut self, other: &Graph) {
        for (label, ns) in other.prefixes() {
            self.prefixes
                .entry(label.clone())
                .or_insert_with(|| ns.clone());
        }
        for t in other.iter() {
            self.insert(t);
        }
    }
}

fn remove_indexed(index: &mut TwoLevelIndex, a: &Node, b: &Node, c: &Node) -> bool {
    let Some(second) = index.get_mut(a) else {
        return false;
    };
    let Some(third) = second.get_mut(b) else {
        return false;
    };
    let removed = third.remove(c);
    if third.is_empty() {
        second.remove(b);
    }
    if second.is_empty() {
        index.remove(a);
    }
    removed
}

/// Walk one permutation index with optional second/third bounds; `rebuild`
/// maps the permuted (first, second, third) back to (s, p, o).
fn scan_index(
    index: &TwoLevelIndex,
    first: &Node,
    second: Option<&Node>,
    third: Option<&Node>,
    rebuild: fn(Node, Node, Node) -> (Node, Node, Node),
) -> Vec<Triple> {
    let mut out = Vec::new();
    let Some(level2) = index.get(first) else {
        return out;
    };
    let entries: Vec<(&Node, &BTreeSet<Node>)> = match second {
        Some(b) => level2.get(b).map(|s| vec![(b, s)]).unwrap_or_default(),
        None => level2.iter().collect(),
    };
    for (b, thirds) in entries {
        match third {
            Some(c) => {
                if thirds.contains(c) {
                    let (s, p, o) = rebuild(first.clone(), b.clone(), c.clone());
                    out.push(Triple {
                        subject: s,
                        predicate: p,
                        object: o,
                    });
                }
            }
            None => {
                for c in thirds {
                    let (s, p, o) = rebuild(first.clone(), b.clone(), c.clone());
                    out.push(Triple {
                        subject: s,
                        predicate: p,
                        object: o,
                    });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str, p: &str, o: &str) -> Triple {
        Triple::new(Node::iri(s), Node::iri(p), Node::iri(o)).unwrap()
    }

    #[test]
    fn insert_is_set_semantics() {
        let mut g = Graph::new();
        assert!(g.insert(t("http://e/a", "http://e/p", "http://e/b")));
        assert!(!g.insert(t("http://e/a", "http://e/p", "http://e/b")));
        assert_eq!(g.len(), 1);
    }

    #[test]
    fn triple_shape_invariants() {
        assert!(Triple::new(
            Node::literal_str("x"),
            Node::iri("http://e/p"),
            Node::iri("http://e/o")
        )
        .is_err());
        assert!(Triple::new(
            Node::iri("http://e/s"),
            Node::blank("b"),
            Node::iri("http://e/o")
        )
        .is_err());
        assert!(Triple::new(
            Node::blank("b"),
            Node::iri("http://e/p"),
            Node::literal_str("x")
        )
        .is_ok());
    }

    #[test]
    fn match_on_empty_graph_is_empty() {
        let g = Graph::new();
        assert!(g.match_triples(None, None, None).is_empty());
    }

    #[test]
    fn match_by_subject() {
        let mut g = Graph::new();
        g.insert(t("http://e/truck1", "http://e/p", "http://e/x"));
        g.insert(t("http://e/truck1", "http://e/q", "http://e/y"));
        g.insert(t("http://e/truck1", "http://e/q", "http://e/z"));
        g.insert(t("http://e/other", "http://e/p", "http://e/x"));
        let hits = g.match_triples(Some(&Node::iri("http://e/truck1")), None, None);
        assert_eq!(hits.len(), 3);
    }

    #[test]
    fn match_by_literal_object() {
        let mut g = Graph::new();
        let lit = Node::literal_typed("1250", crate::vocab::XSD_DECIMAL);
        g.insert(Triple::new(Node::iri("http://e/a"), Node::iri("http://e/p"), lit.clone()).unwrap());
        g.insert(t("http://e/a", "http://e/p", "http://e/b"));
        let hits = g.match_triples(None, None, Some(&lit));
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].object, lit);
    }

    #[test]
    fn remove_keeps_indexes_consistent() {
        let mut g = Graph::new();
        let tr = t("http://e/a", "http://e/p", "http://e/b");
        g.insert(tr.clone());
        assert!(g.remove(&tr));
        assert!(!g.remove(&tr));
        assert_eq!(g.len(), 0);
        assert!(g.match_triples(None, Some(&Node::iri("http://e/p")), None).is_empty());
        assert!(g.match_triples(None, None, Some(&Node::iri("http://e/b"))).is_empty());
    }

    #[test]
    fn literal_equality_is_lexical() {
        let a = Node::literal_typed("1.0", crate::vocab::XSD_DECIMAL);
        let b = Node::literal_typed("1.00", crate::vocab::XSD_DECIMAL);
        assert_ne!(a, b);
    }
}
