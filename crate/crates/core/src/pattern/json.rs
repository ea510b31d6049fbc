//! Template (de)serialization. The JSON form uses `?var` syntax for
//! variables and CURIEs (resolved against the file's `prefixes` map, with
//! the shipped defaults as fallback) for constants:
//!
//! ```json
//! {
//!   "name": "TRACK",
//!   "focus": "?vehicle",
//!   "prefixes": { "ont": "https://cco-forge.dev/ont/" },
//!   "params": [
//!     { "name": "vehicle", "class": "ont:Vehicle" },
//!     { "name": "lat", "datatype": "xsd:string" }
//!   ],
//!   "fresh": [ { "name": "act", "kind": "act" } ],
//!   "schema": [
//!     { "s": "?vehicle", "p": "ont:participatesIn", "o": "?act" },
//!     { "s": "?outer", "p": "ont:intervalDuring", "o": "?multi", "optional": true }
//!   ]
//! }
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::pattern::{
    FreshSlot, ParamDecl, ParamExpect, PatternError, PatternTemplate, SlotRef, TriplePattern,
};
use crate::rdf::Node;
use crate::vocab::{curie, default_prefixes};

#[derive(Debug, Serialize, Deserialize)]
struct TemplateJson {
    name: String,
    focus: String,
    #[serde(default)]
    prefixes: BTreeMap<String, String>,
    params: Vec<ParamJson>,
    #[serde(default)]
    fresh: Vec<FreshJson>,
    schema: Vec<PatternJson>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ParamJson {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    class: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    datatype: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
struct FreshJson {
    name: String,
    kind: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct PatternJson {
    s: String,
    p: String,
    o: String,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    optional: bool,
}

pub fn template_to_json(template: &PatternTemplate) -> serde_json::Value {
    let slot = |s: &SlotRef| match s {
        SlotRef::Param(n) | SlotRef::Fresh(n) => format!("?{n}"),
        SlotRef::Const(Node::Iri(iri)) => curie(iri),
        SlotRef::Const(other) => other.to_string(),
    };
    let json = TemplateJson {
        name: template.name.clone(),
        focus: format!("?{}", template.focus),
        prefixes: default_prefixes(),
        params: template
            .params
            .iter()
            .map(|p| match &p.expect {
                ParamExpect::Class(c) => ParamJson {
                    name: p.name.clone(),
                    class: Some(curie(c)),
                    datatype: None,
                },
                ParamExpect::Datatype(dt) => ParamJson {
                    name: p.name.clone(),
                    class: None,
                    datatype: Some(curie(dt)),
                },
            })
            .collect(),
        fresh: template
            .fresh
            .iter()
            .map(|f| FreshJson {
                name: f.name.clone(),
                kind: f.kind.clone(),
            })
            .collect(),
        schema: template
            .schema
            .iter()
            .map(|p| PatternJson {
                s: slot(&p.subject),
                p: curie(&p.predicate),
                o: slot(&p.object),
                optional: p.optional,
            })
            .collect(),
    };
    serde_json::to_value(json).expect("template serializes")
}

pub fn template_from_json(raw: &str) -> Result<PatternTemplate, PatternError> {
    let json: TemplateJson = serde_json::from_str(raw)
        .map_err(|e| PatternError::MalformedTemplate(e.to_string()))?;
    let mut prefixes = default_prefixes();
    prefixes.extend(json.prefixes.clone());
    let expand = |term: &str| -> Result<String, PatternError> {
        if term.contains("://") || term.starts_with("urn:") {
            return Ok(term.to_string());
        }
        let (pfx, local) = term.split_once(':').ok_or_else(|| {
            PatternError::MalformedTemplate(format!("'{term}' is neither a CURIE nor an IRI"))
        })?;
        let ns = prefixes.get(pfx).ok_or_else(|| {
            PatternError::MalformedTemplate(format!("unknown prefix '{pfx}:' in '{term}'"))
        })?;
        Ok(format!("{ns}{local}"))
    };

    let params: Vec<ParamDecl> = json
        .params
        .iter()
        .map(|p| {
            let expect = match (&p.class, &p.datatype) {
                (Some(c), None) => Ok(ParamExpect::Class(expand(c)?)),
                (None, Some(dt)) => Ok(ParamExpect::Datatype(expand(dt)?)),
                _ => Err(PatternError::MalformedTemplate(format!(
                    "parameter '{}' needs exactly one of class/datatype",
                    p.name
                ))),
            }?;
            Ok(ParamDecl {
                name: p.name.clone(),
                expect,
            })
        })
        .collect::<Result<_, PatternError>>()?;
    let fresh: Vec<FreshSlot> = json
        .fresh
        .iter()
        .map(|f| FreshSlot {
            name: f.name.clone(),
            kind: f.kind.clone(),
        })
        .collect();

    let param_names: Vec<&str> = params.iter().map(|p| p.name.as_str()).collect();
    let fresh_names: Vec<&str> = fresh.iter().map(|f| f.name.as_str()).collect();
    let slot = |token: &str| -> Result<SlotRef, PatternError> {
        if let Some(var) = token.strip_prefix('?') {
            if fresh_names.contains(&var) {
                Ok(SlotRef::Fresh(var.to_string()))
            } else if param_names.contains(&var) {
                Ok(SlotRef::Param(var.to_string()))
            } else {
                Err(PatternError::MalformedTemplate(format!(
                    "variable ?{var} is neither a parameter nor a fresh slot"
                )))
            }
        } else {
            Ok(SlotRef::Const(Node::iri(expand(token)?)))
        }
    };
    let schema: Vec<TriplePattern> = json
        .schema
        .iter()
        .map(|p| {
            Ok(TriplePattern {
                subject: slot(&p.s)?,
                predicate: expand(&p.p)?,
                object: slot(&p.o)?,
                optional: p.optional,
            })
        })
        .collect::<Result<_, PatternError>>()?;

    let focus = json
        .focus
        .strip_prefix('?')
        .unwrap_or(&json.focus)
        .to_string();
    if !param_names.contains(&focus.as_str()) && !fresh_names.contains(&focus.as_str()) {
        return Err(PatternError::MalformedTemplate(format!(
            "focus ?{focus} is neither a parameter nor a fresh slot"
        )));
    }
    Ok(PatternTemplate {
        name: json.name,
        focus,
        params,
        fresh,
        schema,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::builtin_templates;

    #[test]
    fn builtins_round_trip_through_json() {
        for template in builtin_templates() {
            let json = template_to_json(template);
            let back = template_from_json(&json.to_string()).unwrap();
            assert_eq!(&back, template, "{} JSON round-trip", template.name);
        }
    }

    #[test]
    fn unknown_variable_rejected() {
        let raw = r#"{
            "name": "BAD", "focus": "?x",
            "params": [{"name": "x", "class": "ont:Vehicle"}],
            "schema": [{"s": "?x", "p": "ont:partOf", "o": "?ghost"}]
        }"#;
        assert!(template_from_json(raw).is_err());
    }
}
