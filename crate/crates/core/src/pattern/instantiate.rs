//! Template instantiation: substitute a binding into the schema and fill
//! fresh slots with deterministically minted individuals.

use std::collections::BTreeMap;

use crate::pattern::{
    Binding, BoundValue, IdMinter, ParamExpect, PatternError, PatternTemplate, SlotRef,
};
use crate::rdf::{Graph, Node};
use crate::registry::Taxonomy;

#[derive(Debug, Clone)]
pub struct Instantiated {
    pub graph: Graph,
    /// Every variable's concrete node, minted slots included.
    pub nodes: BTreeMap<String, Node>,
}

impl Instantiated {
    pub fn node(&self, var: &str) -> &Node {
        &self.nodes[var]
    }
}

/// Expand `template` under `binding`. The fragment contains exactly the
/// schema triples with parameters substituted and fresh slots filled by
/// minted IRIs; optional patterns are included only when every parameter
/// they mention is bound.
pub fn instantiate(
    template: &PatternTemplate,
    binding: &Binding,
    minter: &IdMinter,
    taxonomy: &Taxonomy,
) -> Result<Instantiated, PatternError> {
    let optional_params = template.optional_params();
    let include_optional = optional_params
        .iter()
        .all(|p| binding.get(p).is_some());

    // every parameter of an included pattern must be bound
    for pattern in &template.schema {
        if pattern.optional && !include_optional {
            continue;
        }
        for slot in [&pattern.subject, &pattern.object] {
            if let SlotRef::Param(name) = slot {
                if binding.get(name).is_none() {
                    return Err(PatternError::MissingParam {
                        template: template.name.clone(),
                        param: name.clone(),
                    });
                }
            }
        }
    }

    check_binding_types(template, binding, taxonomy)?;

    let mut nodes: BTreeMap<String, Node> = BTreeMap::new();
    for (name, value) in binding.values() {
        let node = match value {
            BoundValue::Individual { node, .. } => node.clone(),
            BoundValue::ClassRef(iri) => Node::iri(iri.clone()),
            BoundValue::Value(lit) => Node::Literal(lit.clone()),
        };
        nodes.insert(name.clone(), node);
    }
    let default_key = natural_key(template, binding);
    for slot in &template.fresh {
        let used = template.schema.iter().any(|p| {
            (!p.optional || include_optional)
                && [&p.subject, &p.object]
                    .iter()
                    .any(|s| s.var_name() == Some(slot.name.as_str()))
        });
        if !used {
            continue;
        }
        let node = match binding.fresh_override(&slot.name) {
            Some(node) => node.clone(),
            None => minter.mint(&slot.kind, &format!("{}\u{1f}{}", slot.name, default_key)),
        };
        nodes.insert(slot.name.clone(), node);
    }

    let mut graph = Graph::new();
    for (label, ns) in crate::vocab::default_prefixes() {
        if label == "ont" || label == "rdfs" || label == "xsd" || label == "unit" {
            graph.set_prefix(label, ns);
        }
    }
    for pattern in &template.schema {
        if pattern.optional && !include_optional {
            continue;
        }
        let subject = resolve(&pattern.subject, &nodes);
        let object = resolve(&pattern.object, &nodes);
        graph
            .insert_parts(subject, Node::iri(pattern.predicate.clone()), object)
            .map_err(|e| PatternError::MalformedTemplate(e.to_string()))?;
    }
    Ok(Instantiated { graph, nodes })
}

fn resolve(slot: &SlotRef, nodes: &BTreeMap<String, Node>) -> Node {
    match slot {
        SlotRef::Const(n) => n.clone(),
        SlotRef::Param(name) | SlotRef::Fresh(name) => nodes[name].clone(),
    }
}

/// Stable natural key for default minting: template name plus every bound
/// parameter value in name order.
fn natural_key(template: &PatternTemplate, binding: &Binding) -> String {
    let mut parts = vec![template.name.clone()];
    for (name, value) in binding.values() {
        let rendered = match value {
            BoundValue::Individual { node, .. } => node.to_string(),
            BoundValue::ClassRef(iri) => format!("<{iri}>"),
            BoundValue::Value(lit) => Node::Literal(lit.clone()).to_string(),
        };
        parts.push(format!("{name}={rendered}"));
    }
    parts.join("\u{1f}")
}

fn check_binding_types(
    template: &PatternTemplate,
    binding: &Binding,
    taxonomy: &Taxonomy,
) -> Result<(), PatternError> {
    for decl in &template.params {
        let Some(value) = binding.get(&decl.name) else {
            continue;
        };
        match (&decl.expect, value) {
            (ParamExpect::Class(expected), BoundValue::Individual { class, .. }) => {
                if !taxonomy.is_subclass_of(class, expected)? {
                    return Err(PatternError::TypeMismatch {
                        param: decl.name.clone(),
                        message: format!(
                            "asserted class {} is not a subclass of {}",
                            crate::vocab::curie(class),
                            crate::vocab::curie(expected)
                        ),
                    });
                }
            }
            (ParamExpect::Class(expected), BoundValue::ClassRef(class)) => {
                if !taxonomy.is_subclass_of(class, expected)? {
                    return Err(PatternError::TypeMismatch {
                        param: decl.name.clone(),
                        message: format!(
                            "class {} is not a subclass of {}",
                            crate::vocab::curie(class),
                            crate::vocab::curie(expected)
                        ),
                    });
                }
            }
            (ParamExpect::Class(expected), BoundValue::Value(_)) => {
                return Err(PatternError::TypeMismatch {
                    param: decl.name.clone(),
                    message: format!(
                        "expected an entity under {}, got a literal",
                        crate::vocab::curie(expected)
                    ),
                });
            }
            (ParamExpect::Datatype(dt), BoundValue::Value(lit)) => {
                if lit.datatype() != dt {
                    return Err(PatternError::TypeMismatch {
                        param: decl.name.clone(),
                        message: format!(
                            "expected a literal of datatype {}, got {}",
                            crate::vocab::curie(dt),
                            crate::vocab::curie(lit.datatype())
                        ),
                    });
                }
            }
            (ParamExpect::Datatype(dt), _) => {
                return Err(PatternError::TypeMismatch {
                    param: decl.name.clone(),
                    message: format!("expected a literal of datatype {}", crate::vocab::curie(dt)),
                });
            }
        }
    }
    Ok(())
}
