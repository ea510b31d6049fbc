//! Conformance validation: depth-first homomorphism search from the
//! schema into the data graph, anchored at a focus node, with
//! subclass-aware matching of type patterns and memoized dead ends.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::pattern::{
    ConformanceReport, MissingPattern, ParamExpect, PatternError, PatternTemplate, SlotRef,
    TriplePattern,
};
use crate::rdf::{Graph, Node};
use crate::registry::Taxonomy;
use crate::vocab::{curie, RDF_TYPE};

/// Validate `data` against `template`, anchored at `focus`. Conformant
/// iff a homomorphism from the required schema patterns into the data
/// exists (the focus variable mapped to `focus`) whose parameter type
/// constraints hold under subsumption. Matching is subclass-aware: a
/// node typed `truck` satisfies a `vehicle` type pattern. Untyped nodes
/// never fail a class constraint (open world).
pub fn validate(
    data: &Graph,
    template: &PatternTemplate,
    focus: &Node,
    taxonomy: &Taxonomy,
) -> Result<ConformanceReport, PatternError> {
    if !data.contains_node(focus) {
        return Err(PatternError::FocusAbsent(focus.to_string()));
    }
    let patterns = ordered_patterns(template);
    let mut search = Search {
        data,
        taxonomy,
        template,
        patterns,
        deepest: 0,
        deepest_missing: None,
        fallback_type_errors: None,
        memo: HashSet::new(),
    };
    let mut assignment: BTreeMap<String, Node> = BTreeMap::new();
    assignment.insert(template.focus.clone(), focus.clone());
    if search.dfs(0, &mut assignment) {
        return Ok(ConformanceReport::assemble(&template.name, focus, vec![], vec![]));
    }
    // a structurally matching but ill-typed assignment beats "missing"
    if let Some(type_errors) = search.deepest_missing_type_errors() {
        return Ok(ConformanceReport::assemble(
            &template.name,
            focus,
            vec![],
            type_errors,
        ));
    }
    let missing = search
        .deepest_missing
        .map(|m| vec![m])
        .unwrap_or_default();
    Ok(ConformanceReport::assemble(&template.name, focus, missing, vec![]))
}

/// Reorder the required patterns so each one shares a variable with the
/// already-covered set whenever possible, starting from the focus.
fn ordered_patterns(template: &PatternTemplate) -> Vec<TriplePattern> {
    let mut remaining: Vec<TriplePattern> = template.required_patterns().cloned().collect();
    let mut covered: BTreeSet<String> = BTreeSet::new();
    covered.insert(template.focus.clone());
    let mut ordered = Vec::with_capacity(remaining.len());
    while !remaining.is_empty() {
        let idx = remaining
            .iter()
            .position(|p| {
                [&p.subject, &p.object]
                    .iter()
                    .any(|s| s.var_name().map(|v| covered.contains(v)).unwrap_or(false))
            })
            .unwrap_or(0);
        let pattern = remaining.remove(idx);
        for slot in [&pattern.subject, &pattern.object] {
            if let Some(v) = slot.var_name() {
                covered.insert(v.to_string());
            }
        }
        ordered.push(pattern);
    }
    ordered
}

struct Search<'a> {
    data: &'a Graph,
    taxonomy: &'a Taxonomy,
    template: &'a PatternTemplate,
    patterns: Vec<TriplePattern>,
    deepest: usize,
    deepest_missing: Option<MissingPattern>,
    /// Type errors of the first structurally complete assignment, kept in
    /// case no type-clean assignment exists.
    fallback_type_errors: Option<Vec<String>>,
    memo: HashSet<String>,
}

impl<'a> Search<'a> {
    fn dfs(&mut self, depth: usize, assignment: &mut BTreeMap<String, Node>) -> bool {
        if depth == self.patterns.len() {
            let errors = self.check_types(assignment);
            if errors.is_empty() {
                return true;
            }
            self.fallback_type_errors.get_or_insert(errors);
            return false;
        }
        let key = memo_key(depth, assignment);
        if self.memo.contains(&key) {
            return false;
        }
        let pattern = self.patterns[depth].clone();
        let candidates = self.candidates(&pattern, assignment);
        if candidates.is_empty() && depth >= self.deepest {
            self.deepest = depth;
            self.deepest_missing = Some(MissingPattern {
                pattern: pattern.render(),
                partial: assignment
                    .iter()
                    .map(|(k, v)| (k.clone(), v.to_string()))
                    .collect(),
            });
        }
        for (subject, object) in candidates {
            let mut bound_here: Vec<String> = Vec::new();
            if !bind(&pattern.subject, subject, assignment, &mut bound_here)
                || !bind(&pattern.object, object, assignment, &mut bound_here)
            {
                for name in bound_here.drain(..) {
                    assignment.remove(&name);
                }
                continue;
            }
            if self.dfs(depth + 1, assignment) {
                return true;
            }
            for name in bound_here.drain(..) {
                assignment.remove(&name);
            }
        }
        self.memo.insert(key);
        false
    }

    /// Enumerate data triples matching the pattern under the current
    /// assignment; type patterns with a registered class constant accept
    /// any subclass.
    fn candidates(
        &self,
        pattern: &TriplePattern,
        assignment: &BTreeMap<String, Node>,
    ) -> Vec<(Node, Node)> {
        let resolve = |slot: &SlotRef| -> Option<Node> {
            match slot {
                SlotRef::Const(n) => Some(n.clone()),
                SlotRef::Param(n) | SlotRef::Fresh(n) => assignment.get(n).cloned(),
            }
        };
        let s = resolve(&pattern.subject);
        let predicate = Node::iri(pattern.predicate.clone());
        let o = resolve(&pattern.object);

        let subclass_aware_class = match (&pattern.object, &o) {
            (SlotRef::Const(Node::Iri(class)), _) | (_, Some(Node::Iri(class)))
                if pattern.predicate == RDF_TYPE && self.taxonomy.is_class(class) =>
            {
                Some(class.clone())
            }
            _ => None,
        };

        match subclass_aware_class {
            Some(class) => self
                .data
                .match_triples(s.as_ref(), Some(&predicate), None)
                .into_iter()
                .filter(|t| match t.object.as_iri() {
                    Some(ty) => self.taxonomy.is_subclass_of(ty, &class).unwrap_or(false),
                    None => false,
                })
                .map(|t| (t.subject, t.object))
                .collect(),
            None => self
                .data
                .match_triples(s.as_ref(), Some(&predicate), o.as_ref())
                .into_iter()
                .map(|t| (t.subject, t.object))
                .collect(),
        }
    }

    fn check_types(&self, assignment: &BTreeMap<String, Node>) -> Vec<String> {
        let mut errors = Vec::new();
        for decl in &self.template.params {
            let Some(node) = assignment.get(&decl.name) else {
                continue;
            };
            match &decl.expect {
                ParamExpect::Class(expected) => match node {
                    Node::Literal(_) => errors.push(format!(
                        "?{} expected an entity under {}, matched a literal",
                        decl.name,
                        curie(expected)
                    )),
                    Node::Iri(iri) if self.taxonomy.is_class(iri) => {
                        if !self.taxonomy.is_subclass_of(iri, expected).unwrap_or(false) {
                            errors.push(format!(
                                "?{}: class {} is not a subclass of {}",
                                decl.name,
                                curie(iri),
                                curie(expected)
                            ));
                        }
                    }
                    other => {
                        let asserted: Vec<String> = self
                            .data
                            .objects(other, RDF_TYPE)
                            .into_iter()
                            .filter_map(|n| n.as_iri().map(str::to_string))
                            .filter(|c| self.taxonomy.is_class(c))
                            .collect();
                        if !asserted.is_empty()
                            && !asserted.iter().any(|c| {
                                self.taxonomy.is_subclass_of(c, expected).unwrap_or(false)
                            })
                        {
                            errors.push(format!(
                                "?{}: {} is typed {} but none falls under {}",
                                decl.name,
                                other,
                                asserted.iter().map(|c| curie(c)).collect::<Vec<_>>().join(", "),
                                curie(expected)
                            ));
                        }
                    }
                },
                ParamExpect::Datatype(dt) => match node {
                    Node::Literal(lit) if lit.datatype() == dt => {}
                    other => errors.push(format!(
                        "?{} expected a literal of datatype {}, matched {}",
                        decl.name,
                        curie(dt),
                        other
                    )),
                },
            }
        }
        errors
    }

    fn deepest_missing_type_errors(&mut self) -> Option<Vec<String>> {
        self.fallback_type_errors.take()
    }
}

fn bind(
    slot: &SlotRef,
    value: Node,
    assignment: &mut BTreeMap<String, Node>,
    bound_here: &mut Vec<String>,
) -> bool {
    match slot {
        SlotRef::Const(c) => *c == value,
        SlotRef::Param(name) | SlotRef::Fresh(name) => match assignment.get(name) {
            Some(existing) => *existing == value,
            None => {
                assignment.insert(name.clone(), value);
                bound_here.push(name.clone());
                true
            }
        },
    }
}

fn memo_key(depth: usize, assignment: &BTreeMap<String, Node>) -> String {
    let mut key = depth.to_string();
    for (name, node) in assignment {
        key.push('\u{1f}');
        key.push_str(name);
        key.push('=');
        key.push_str(&node.to_string());
    }
    key
}
