//! Design-pattern templates: parameterized triple schemas that can be
//! instantiated into graph fragments from bindings and validated against
//! arbitrary data graphs by anchored homomorphism search.

mod builtins;
mod instantiate;
mod json;
mod minter;
mod validate;

pub use builtins::{builtin_template, builtin_templates, BUILTIN_NAMES};
pub use instantiate::{instantiate, Instantiated};
pub use json::{template_from_json, template_to_json};
pub use minter::IdMinter;
pub use validate::validate;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::rdf::{Literal, Node};
use crate::registry::RegistryError;
use crate::vocab::{curie, resolve_curie};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PatternError {
    #[error("unknown template '{0}'")]
    UnknownTemplate(String),
    #[error("template {template}: missing binding for parameter '{param}'")]
    MissingParam { template: String, param: String },
    #[error("parameter '{param}': {message}")]
    TypeMismatch { param: String, message: String },
    #[error("focus {0} does not occur in the data graph")]
    FocusAbsent(String),
    #[error("malformed template: {0}")]
    MalformedTemplate(String),
    #[error(transparent)]
    Registry(#[from] RegistryError),
}

/// One position of a triple pattern: a named variable (parameter or
/// fresh slot) or a constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SlotRef {
    Param(String),
    Fresh(String),
    Const(Node),
}

impl SlotRef {
    pub fn var_name(&self) -> Option<&str> {
        match self {
            SlotRef::Param(n) | SlotRef::Fresh(n) => Some(n),
            SlotRef::Const(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriplePattern {
    pub subject: SlotRef,
    /// Predicates are always IRI constants.
    pub predicate: String,
    pub object: SlotRef,
    pub optional: bool,
}

impl TriplePattern {
    pub fn render(&self) -> String {
        let slot = |s: &SlotRef| match s {
            SlotRef::Param(n) | SlotRef::Fresh(n) => format!("?{n}"),
            SlotRef::Const(n) => match n {
                Node::Iri(iri) => curie(iri),
                other => other.to_string(),
            },
        };
        format!("{} {} {}", slot(&self.subject), curie(&self.predicate), slot(&self.object))
    }
}

/// What a parameter accepts: an entity whose asserted type falls under a
/// class (a registered class node satisfies it by subsumption directly),
/// or a literal of a given datatype.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamExpect {
    Class(String),
    Datatype(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamDecl {
    pub name: String,
    pub expect: ParamExpect,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreshSlot {
    pub name: String,
    /// Path segment used when minting IRIs for this slot.
    pub kind: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternTemplate {
    pub name: String,
    /// Variable (parameter or fresh slot) validation anchors at.
    pub focus: String,
    pub params: Vec<ParamDecl>,
    pub fresh: Vec<FreshSlot>,
    pub schema: Vec<TriplePattern>,
}

impl PatternTemplate {
    /// Build from `?var`/CURIE shorthand. Each schema row is
    /// (subject, predicate, object, optional).
    pub fn build(
        name: &str,
        focus: &str,
        params: Vec<(&str, ParamExpect)>,
        fresh: Vec<(&str, &str)>,
        schema: Vec<(&str, &str, &str, bool)>,
    ) -> Result<PatternTemplate, PatternError> {
        let params: Vec<ParamDecl> = params
            .into_iter()
            .map(|(n, expect)| ParamDecl {
                name: n.to_string(),
                expect,
            })
            .collect();
        let fresh: Vec<FreshSlot> = fresh
            .into_iter()
            .map(|(n, kind)| FreshSlot {
                name: n.to_string(),
                kind: kind.to_string(),
            })
            .collect();
        let param_names: BTreeSet<&str> = params.iter().map(|p| p.name.as_str()).collect();
        let fresh_names: BTreeSet<&str> = fresh.iter().map(|f| f.name.as_str()).collect();
        let resolve_slot = |token: &str| -> Result<SlotRef, PatternError> {
            if let Some(var) = token.strip_prefix('?') {
                if fresh_names.contains(var) {
                    Ok(SlotRef::Fresh(var.to_string()))
                } else if param_names.contains(var) {
                    Ok(SlotRef::Param(var.to_string()))
                } else {
                    Err(PatternError::MalformedTemplate(format!(
                        "variable ?{var} is neither a parameter nor a fresh slot"
                    )))
                }
            } else {
                let iri = resolve_curie(token).ok_or_else(|| {
                    PatternError::MalformedTemplate(format!("unresolvable term '{token}'"))
                })?;
                Ok(SlotRef::Const(Node::iri(iri)))
            }
        };
        let mut patterns = Vec::new();
        for (s, p, o, optional) in schema {
            let predicate = resolve_curie(p).ok_or_else(|| {
                PatternError::MalformedTemplate(format!("unresolvable predicate '{p}'"))
            })?;
            patterns.push(TriplePattern {
                subject: resolve_slot(s)?,
                predicate,
                object: resolve_slot(o)?,
                optional,
            });
        }
        if !param_names.contains(focus) && !fresh_names.contains(focus) {
            return Err(PatternError::MalformedTemplate(format!(
                "focus ?{focus} is neither a parameter nor a fresh slot"
            )));
        }
        Ok(PatternTemplate {
            name: name.to_string(),
            focus: focus.to_string(),
            params,
            fresh,
            schema: patterns,
        })
    }

    pub fn param(&self, name: &str) -> Option<&ParamDecl> {
        self.params.iter().find(|p| p.name == name)
    }

    /// Class constraints per parameter, derived from the declarations.
    pub fn required_types(&self) -> BTreeMap<&str, &str> {
        self.params
            .iter()
            .filter_map(|p| match &p.expect {
                ParamExpect::Class(c) => Some((p.name.as_str(), c.as_str())),
                ParamExpect::Datatype(_) => None,
            })
            .collect()
    }

    pub fn required_patterns(&self) -> impl Iterator<Item = &TriplePattern> {
        self.schema.iter().filter(|p| !p.optional)
    }

    /// Parameters referenced anywhere in the optional patterns.
    pub fn optional_params(&self) -> BTreeSet<&str> {
        self.schema
            .iter()
            .filter(|p| p.optional)
            .flat_map(|p| [&p.subject, &p.object])
            .filter_map(|s| match s {
                SlotRef::Param(n) => Some(n.as_str()),
                _ => None,
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundValue {
    /// An individual with its asserted class.
    Individual { node: Node, class: String },
    /// A registered class standing in a class-valued slot.
    ClassRef(String),
    /// A literal value.
    Value(Literal),
}

#[derive(Debug, Clone, Default)]
pub struct Binding {
    values: BTreeMap<String, BoundValue>,
    fresh_overrides: BTreeMap<String, Node>,
}

impl Binding {
    pub fn new() -> Binding {
        Binding::default()
    }

    pub fn bind_individual(
        mut self,
        param: &str,
        node: Node,
        class: impl Into<String>,
    ) -> Binding {
        self.values.insert(
            param.to_string(),
            BoundValue::Individual {
                node,
                class: class.into(),
            },
        );
        self
    }

    pub fn bind_class(mut self, param: &str, class_iri: impl Into<String>) -> Binding {
        self.values
            .insert(param.to_string(), BoundValue::ClassRef(class_iri.into()));
        self
    }

    /// Bind a plain string token.
    pub fn bind_value(mut self, param: &str, lexical: impl Into<String>) -> Binding {
        let node = Node::literal_str(lexical);
        let Node::Literal(lit) = node else { unreachable!() };
        self.values.insert(param.to_string(), BoundValue::Value(lit));
        self
    }

    pub fn bind_literal(mut self, param: &str, literal: Literal) -> Binding {
        self.values
            .insert(param.to_string(), BoundValue::Value(literal));
        self
    }

    /// Pin a fresh slot to a caller-chosen node instead of letting the
    /// minter derive one; ingestion uses this to share individuals
    /// across rows.
    pub fn bind_fresh(mut self, slot: &str, node: Node) -> Binding {
        self.fresh_overrides.insert(slot.to_string(), node);
        self
    }

    pub fn get(&self, param: &str) -> Option<&BoundValue> {
        self.values.get(param)
    }

    pub fn fresh_override(&self, slot: &str) -> Option<&Node> {
        self.fresh_overrides.get(slot)
    }

    pub fn values(&self) -> &BTreeMap<String, BoundValue> {
        &self.values
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConformanceStatus {
    #[serde(rename = "conformant")]
    Conformant,
    #[serde(rename = "nonconformant")]
    Nonconformant,
}

#[derive(Debug, Clone, Serialize)]
pub struct MissingPattern {
    /// Rendered triple pattern, `?var`/CURIE form.
    pub pattern: String,
    /// Variable bindings in force on the failing branch.
    pub partial: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConformanceReport {
    pub template: String,
    pub focus: String,
    pub status: ConformanceStatus,
    pub missing: Vec<MissingPattern>,
    pub type_errors: Vec<String>,
}

impl ConformanceReport {
    pub(crate) fn assemble(
        template: &str,
        focus: &Node,
        missing: Vec<MissingPattern>,
        type_errors: Vec<String>,
    ) -> ConformanceReport {
        let status = if missing.is_empty() && type_errors.is_empty() {
            ConformanceStatus::Conformant
        } else {
            ConformanceStatus::Nonconformant
        };
        ConformanceReport {
            template: template.to_string(),
            focus: focus.to_string(),
            status,
            missing,
            type_errors,
        }
    }

    pub fn is_conformant(&self) -> bool {
        self.status == ConformanceStatus::Conformant
    }
}
