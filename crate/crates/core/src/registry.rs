//! Curated class/relation registry over the BFO + Common Core taxonomy:
//! loading from the Turtle annotation vocabulary, reflexive-transitive
//! subsumption queries, and structural consistency checks over parent
//! cycles, disjointness, and instance typing.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::rdf::{Graph, Node};
use crate::report::{ViolationCode, ViolationReport};
use crate::vocab::{
    curie, RDFS_LABEL, RDFS_SUBCLASS_OF, RDF_TYPE, REG_DISJOINT_WITH, REG_KIND, REG_MODULE,
    SKOS_DEFINITION,
};

/// The eleven suite modules plus the top-level "bfo".
pub const MODULES: [&str; 12] = [
    "bfo",
    "agent",
    "artifact",
    "currency-unit",
    "event",
    "extended-relations",
    "facility",
    "geospatial",
    "information-entity",
    "quality",
    "time",
    "units-of-measure",
];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RegistryError {
    #[error("unknown term {0}")]
    UnknownTerm(String),
    #[error("cycle through {0}")]
    Cycle(String),
    #[error("orphan class {0}: no parent path to the root entity class")]
    Orphan(String),
    #[error("term {term}: unknown module '{module}'")]
    UnknownModule { term: String, module: String },
    #[error("term {term}: missing or malformed '{what}' annotation")]
    BadAnnotation { term: String, what: String },
    #[error("term {term}: parent {parent} is not a registered term of the same kind")]
    BadParent { term: String, parent: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TermKind {
    Class,
    ObjectRelation,
    AnnotationRelation,
}

impl TermKind {
    pub fn parse(s: &str) -> Option<TermKind> {
        match s {
            "class" => Some(TermKind::Class),
            "object-relation" => Some(TermKind::ObjectRelation),
            "annotation-relation" => Some(TermKind::AnnotationRelation),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            TermKind::Class => "class",
            TermKind::ObjectRelation => "object-relation",
            TermKind::AnnotationRelation => "annotation-relation",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermEntry {
    pub iri: String,
    pub label: String,
    pub kind: TermKind,
    pub parents: BTreeSet<String>,
    pub module: String,
    pub definition: String,
}

/// Immutable after construction; all queries are reads.
#[derive(Debug, Clone, Default)]
pub struct Taxonomy {
    entries: BTreeMap<String, TermEntry>,
    disjoint_pairs: BTreeSet<(String, String)>,
    /// Reflexive-transitive ancestor closure, tolerant of cycles.
    ancestors: BTreeMap<String, BTreeSet<String>>,
}

impl Taxonomy {
    /// Build without structural validation; [`Taxonomy::check`] reports
    /// problems, [`load_registry`] rejects them.
    pub fn from_entries(
        entries: impl IntoIterator<Item = TermEntry>,
        disjoint_pairs: impl IntoIterator<Item = (String, String)>,
    ) -> Taxonomy {
        let entries: BTreeMap<String, TermEntry> =
            entries.into_iter().map(|e| (e.iri.clone(), e)).collect();
        let disjoint_pairs = disjoint_pairs
            .into_iter()
            .map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
            .collect();
        let mut ancestors = BTreeMap::new();
        for iri in entries.keys() {
            let mut seen = BTreeSet::new();
            let mut stack = vec![iri.clone()];
            while let Some(cur) = stack.pop() {
                if !seen.insert(cur.clone()) {
                    continue;
                }
                if let Some(entry) = entries.get(&cur) {
                    for p in &entry.parents {
                        stack.push(p.clone());
                    }
                }
            }
            ancestors.insert(iri.clone(), seen);
        }
        Taxonomy {
            entries,
            disjoint_pairs,
            ancestors,
        }
    }

    pub fn entry(&self, iri: &str) -> Option<&TermEntry> {
        self.entries.get(iri)
    }

    pub fn entries(&self) -> impl Iterator<Item = &TermEntry> {
        self.entries.values()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, iri: &str) -> bool {
        self.entries.contains_key(iri)
    }

    pub fn is_class(&self, iri: &str) -> bool {
        matches!(self.entry(iri), Some(e) if e.kind == TermKind::Class)
    }

    pub fn disjoint_pairs(&self) -> &BTreeSet<(String, String)> {
        &self.disjoint_pairs
    }

    /// Reflexive-transitive subsumption: true iff `b` is reachable from
    /// `a` by zero or more parent steps.
    pub fn is_subclass_of(&self, a: &str, b: &str) -> Result<bool, RegistryError> {
        if !self.entries.contains_key(a) {
            return Err(RegistryError::UnknownTerm(a.to_string()));
        }
        if !self.entries.contains_key(b) {
            return Err(RegistryError::UnknownTerm(b.to_string()));
        }
        Ok(self.ancestors[a].contains(b))
    }

    /// Ancestor set including the term itself.
    pub fn ancestors_of(&self, iri: &str) -> Option<&BTreeSet<String>> {
        self.ancestors.get(iri)
    }

    /// Structural checks: parent cycles, dangling parents, and classes
    /// whose ancestor set contains a disjoint pair.
    pub fn check(&self) -> ViolationReport {
        let mut report = ViolationReport::new();
        for (iri, entry) in &self.entries {
            for parent in &entry.parents {
                match self.entries.get(parent) {
                    None => report.push(
                        ViolationCode::UnknownTerm,
                        iri.clone(),
                        format!("parent {} is not registered", curie(parent)),
                    ),
                    Some(p) if p.kind != entry.kind => report.push(
                        ViolationCode::BadPredicateKind,
                        iri.clone(),
                        format!(
                            "parent {} has kind {} but {} has kind {}",
                            curie(parent),
                            p.kind.as_str(),
                            curie(iri),
                            entry.kind.as_str()
                        ),
                    ),
                    _ => {}
                }
                if let Some(parent_anc) = self.ancestors.get(parent) {
                    if parent_anc.contains(iri) {
                        report.push(
                            ViolationCode::Cycle,
                            iri.clone(),
                            format!(
                                "parent chain through {} returns to {}",
                                curie(parent),
                                curie(iri)
                            ),
                        );
                    }
                }
            }
            if entry.kind == TermKind::Class {
                self.check_disjoint_ancestors(iri, &self.ancestors[iri], &mut report);
            }
        }
        report.sorted()
    }

    fn check_disjoint_ancestors(
        &self,
        focus: &str,
        ancestors: &BTreeSet<String>,
        report: &mut ViolationReport,
    ) {
        for (a, b) in &self.disjoint_pairs {
            if ancestors.contains(a) && ancestors.contains(b) {
                report.push(
                    ViolationCode::DisjointTypes,
                    focus.to_string(),
                    format!("lies under both {} and {}", curie(a), curie(b)),
                );
            }
        }
    }

    /// Check a data graph against the registry: disjoint typing, unknown
    /// terms, and predicate-kind misuse. Missing optional structure is
    /// never a violation.
    pub fn check_instances(&self, data: &Graph) -> ViolationReport {
        let mut report = ViolationReport::new();
        let mut types_by_subject: BTreeMap<Node, BTreeSet<String>> = BTreeMap::new();

        for t in data.iter() {
            let pred = t.predicate.as_iri().expect("predicates are IRIs");
            if pred == RDF_TYPE {
                match &t.object {
                    Node::Iri(class_iri) => {
                        if self.is_class(class_iri) {
                            types_by_subject
                                .entry(t.subject.clone())
                                .or_default()
                                .insert(class_iri.clone());
                        } else {
                            report.push(
                                ViolationCode::UnknownTerm,
                                class_iri.clone(),
                                format!(
                                    "{} is typed with an unregistered class",
                                    node_focus(&t.subject)
                                ),
                            );
                        }
                    }
                    other => report.push(
                        ViolationCode::BadPredicateKind,
                        node_focus(&t.subject),
                        format!("rdf:type object must be a class IRI, found {other}"),
                    ),
                }
                continue;
            }
            match self.entry(pred) {
                None => report.push(
                    ViolationCode::UnknownTerm,
                    pred.to_string(),
                    "predicate is not a registered relation".to_string(),
                ),
                Some(entry) => match entry.kind {
                    TermKind::Class => report.push(
                        ViolationCode::BadPredicateKind,
                        pred.to_string(),
                        "a class cannot be used as a predicate".to_string(),
                    ),
                    TermKind::ObjectRelation => {
                        if t.object.is_literal() {
                            report.push(
                                ViolationCode::BadPredicateKind,
                                node_focus(&t.subject),
                                format!(
                                    "object relation {} must not take a literal object",
                                    curie(pred)
                                ),
                            );
                        }
                    }
                    TermKind::AnnotationRelation => {}
                },
            }
        }

        for (subject, types) in &types_by_subject {
            let mut lineage: BTreeSet<String> = BTreeSet::new();
            for ty in types {
                if let Some(anc) = self.ancestors_of(ty) {
                    lineage.extend(anc.iter().cloned());
                }
            }
            self.check_disjoint_ancestors(&node_focus(subject), &lineage, &mut report);
        }
        report.sorted()
    }
}

fn node_focus(node: &Node) -> String {
    match node {
        Node::Iri(iri) => iri.clone(),
        Node::Blank(label) => format!("_:{label}"),
        Node::Literal(lit) => lit.lexical().to_string(),
    }
}

/// Read term entries out of a registry graph without structural
/// validation. Annotation-level problems (bad kind, unknown module) are
/// still hard errors.
pub fn read_entries(
    graph: &Graph,
) -> Result<(Vec<TermEntry>, Vec<(String, String)>), RegistryError> {
    let kind_pred = Node::iri(REG_KIND);
    let mut entries = Vec::new();
    for t in graph.match_triples(None, Some(&kind_pred), None) {
        let Node::Iri(iri) = &t.subject else {
            continue;
        };
        let kind_lex = match &t.object {
            Node::Literal(l) => l.lexical().to_string(),
            _ => {
                return Err(RegistryError::BadAnnotation {
                    term: iri.clone(),
                    what: "kind".to_string(),
                })
            }
        };
        let kind = TermKind::parse(&kind_lex).ok_or_else(|| RegistryError::BadAnnotation {
            term: iri.clone(),
            what: "kind".to_string(),
        })?;
        let module = match graph.object(&t.subject, REG_MODULE) {
            Some(Node::Literal(l)) => l.lexical().to_string(),
            _ => {
                return Err(RegistryError::BadAnnotation {
                    term: iri.clone(),
                    what: "module".to_string(),
                })
            }
        };
        if !MODULES.contains(&module.as_str()) {
            return Err(RegistryError::UnknownModule {
                term: iri.clone(),
                module,
            });
        }
        let label = match graph.object(&t.subject, RDFS_LABEL) {
            Some(Node::Literal(l)) => l.lexical().to_string(),
            _ => String::new(),
        };
        let definition = match graph.object(&t.subject, SKOS_DEFINITION) {
            Some(Node::Literal(l)) => l.lexical().to_string(),
            _ => String::new(),
        };
        let parents: BTreeSet<String> = graph
            .objects(&t.subject, RDFS_SUBCLASS_OF)
            .into_iter()
            .filter_map(|n| n.as_iri().map(str::to_string))
            .collect();
        entries.push(TermEntry {
            iri: iri.clone(),
            label,
            kind,
            parents,
            module,
            definition,
        });
    }
    let mut disjoints = Vec::new();
    for t in graph.match_triples(None, Some(&Node::iri(REG_DISJOINT_WITH)), None) {
        if let (Node::Iri(a), Node::Iri(b)) = (&t.subject, &t.object) {
            disjoints.push((a.clone(), b.clone()));
        }
    }
    Ok((entries, disjoints))
}

/// Lenient load for the `check` pipeline: structural problems (cycles,
/// orphans, dangling parents) survive into the taxonomy so that
/// [`Taxonomy::check`] can report them.
pub fn load_registry_unchecked(graph: &Graph) -> Result<Taxonomy, RegistryError> {
    let (entries, disjoints) = read_entries(graph)?;
    Ok(Taxonomy::from_entries(entries, disjoints))
}

/// Strict load: the registry vocabulary is read and the taxonomy must be
/// acyclic, parents must resolve within the same kind, and every class
/// must reach the root entity class.
pub fn load_registry(graph: &Graph) -> Result<Taxonomy, RegistryError> {
    let taxonomy = load_registry_unchecked(graph)?;
    let root = crate::vocab::ont("Entity");
    for entry in taxonomy.entries() {
        for parent in &entry.parents {
            match taxonomy.entry(parent) {
                Some(p) if p.kind == entry.kind => {}
                _ => {
                    return Err(RegistryError::BadParent {
                        term: entry.iri.clone(),
                        parent: parent.clone(),
                    })
                }
            }
            if taxonomy.ancestors_of(parent).map(|a| a.contains(&entry.iri)) == Some(true) {
                return Err(RegistryError::Cycle(entry.iri.clone()));
            }
        }
        if entry.kind == TermKind::Class
            && !taxonomy.ancestors_of(&entry.iri).unwrap().contains(&root)
        {
            return Err(RegistryError::Orphan(entry.iri.clone()));
        }
    }
    Ok(taxonomy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vocab::ont;

    fn class(iri: &str, parents: &[&str]) -> TermEntry {
        TermEntry {
            iri: iri.to_string(),
            label: iri.rsplit('/').next().unwrap_or(iri).to_string(),
            kind: TermKind::Class,
            parents: parents.iter().map(|s| s.to_string()).collect(),
            module: "bfo".to_string(),
            definition: String::new(),
        }
    }

    #[test]
    fn subclass_is_reflexive() {
        let t = Taxonomy::from_entries(vec![class("x", &[])], vec![]);
        assert!(t.is_subclass_of("x", "x").unwrap());
    }

    #[test]
    fn subclass_is_transitive() {
        let t = Taxonomy::from_entries(
            vec![class("a", &["b"]), class("b", &["c"]), class("c", &[])],
            vec![],
        );
        assert!(t.is_subclass_of("a", "c").unwrap());
        assert!(!t.is_subclass_of("c", "a").unwrap());
    }

    #[test]
    fn unknown_term_is_an_error() {
        let t = Taxonomy::from_entries(vec![class("x", &[])], vec![]);
        assert_eq!(
            t.is_subclass_of("x", "nope"),
            Err(RegistryError::UnknownTerm("nope".to_string()))
        );
    }

    #[test]
    fn self_parent_reports_cycle() {
        let t = Taxonomy::from_entries(vec![class("x", &["x"])], vec![]);
        assert!(t.check().has(ViolationCode::Cycle));
    }

    #[test]
    fn two_step_cycle_reports_cycle() {
        let t = Taxonomy::from_entries(vec![class("a", &["b"]), class("b", &["a"])], vec![]);
        assert!(t.check().has(ViolationCode::Cycle));
    }

    #[test]
    fn disjoint_ancestors_reported() {
        let t = Taxonomy::from_entries(
            vec![
                class("cont", &[]),
                class("occ", &[]),
                class("x", &["cont", "occ"]),
            ],
            vec![("cont".to_string(), "occ".to_string())],
        );
        let report = t.check();
        assert!(report.has(ViolationCode::DisjointTypes));
        assert_eq!(report.violations[0].focus, "x");
    }

    #[test]
    fn check_instances_flags_dual_lineage() {
        let t = Taxonomy::from_entries(
            vec![
                class("cont", &[]),
                class("occ", &[]),
                class("truck", &["cont"]),
                class("act", &["occ"]),
            ],
            vec![("cont".to_string(), "occ".to_string())],
        );
        let mut g = Graph::new();
        g.insert_parts(Node::iri("http://d/i"), Node::iri(RDF_TYPE), Node::iri("truck"))
            .unwrap();
        g.insert_parts(Node::iri("http://d/i"), Node::iri(RDF_TYPE), Node::iri("act"))
            .unwrap();
        assert!(t.check_instances(&g).has(ViolationCode::DisjointTypes));
    }

    #[test]
    fn check_instances_unknown_predicate() {
        let t = Taxonomy::from_entries(vec![class(&ont("Entity"), &[])], vec![]);
        let mut g = Graph::new();
        g.insert_parts(
            Node::iri("http://d/i"),
            Node::iri("http://d/undeclared"),
            Node::iri("http://d/j"),
        )
        .unwrap();
        let report = t.check_instances(&g);
        assert!(report.has(ViolationCode::UnknownTerm));
        assert_eq!(report.violations[0].focus, "http://d/undeclared");
    }
}
