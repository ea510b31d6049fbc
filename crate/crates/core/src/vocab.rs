//! IRI constants and namespace helpers shared across the crate.

use std::collections::BTreeMap;

pub const ONT_NS: &str = "https://cco-forge.dev/ont/";
pub const REG_NS: &str = "https://cco-forge.dev/registry#";
pub const UNIT_NS: &str = "https://cco-forge.dev/unit/";
pub const DATA_NS: &str = "https://cco-forge.dev/data";

pub const RDF_NS: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS_NS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const XSD_NS: &str = "http://www.w3.org/2001/XMLSchema#";
pub const SKOS_NS: &str = "http://www.w3.org/2004/02/skos/core#";

pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
pub const RDF_LANG_STRING: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
pub const RDFS_LABEL: &str = "http://www.w3.org/2000/01/rdf-schema#label";
pub const RDFS_SUBCLASS_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
pub const SKOS_DEFINITION: &str = "http://www.w3.org/2004/02/skos/core#definition";

pub const XSD_STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
pub const XSD_INTEGER: &str = "http://www.w3.org/2001/XMLSchema#integer";
pub const XSD_DECIMAL: &str = "http://www.w3.org/2001/XMLSchema#decimal";
pub const XSD_DOUBLE: &str = "http://www.w3.org/2001/XMLSchema#double";
pub const XSD_BOOLEAN: &str = "http://www.w3.org/2001/XMLSchema#boolean";

/// Registry vocabulary: term kind (class / object-relation / annotation-relation).
pub const REG_KIND: &str = "https://cco-forge.dev/registry#kind";
/// Registry vocabulary: owning ontology module.
pub const REG_MODULE: &str = "https://cco-forge.dev/registry#module";
/// Registry vocabulary: pairwise class disjointness.
pub const REG_DISJOINT_WITH: &str = "https://cco-forge.dev/registry#disjointWith";
/// Unit vocabulary: dimension tag, affine scale and offset.
pub const REG_DIMENSION: &str = "https://cco-forge.dev/registry#dimension";
pub const REG_SCALE: &str = "https://cco-forge.dev/registry#scale";
pub const REG_OFFSET: &str = "https://cco-forge.dev/registry#offset";

pub fn ont(local: &str) -> String {
    format!("{ONT_NS}{local}")
}

pub fn unit_iri(local: &str) -> String {
    format!("{UNIT_NS}{local}")
}

/// Prefix map used by the shipped seeds, emitted fragments, and CURIE
/// resolution in CLI arguments and CSV columns.
pub fn default_prefixes() -> BTreeMap<String, String> {
    let mut map = BTreeMap::new();
    map.insert("ont".to_string(), ONT_NS.to_string());
    map.insert("reg".to_string(), REG_NS.to_string());
    map.insert("unit".to_string(), UNIT_NS.to_string());
    map.insert("rdf".to_string(), RDF_NS.to_string());
    map.insert("rdfs".to_string(), RDFS_NS.to_string());
    map.insert("xsd".to_string(), XSD_NS.to_string());
    map.insert("skos".to_string(), SKOS_NS.to_string());
    map
}

/// Expand `pfx:local` against the default prefixes; full IRIs pass through.
pub fn resolve_curie(s: &str) -> Option<String> {
    if s.contains("://") || s.starts_with("urn:") {
        return Some(s.to_string());
    }
    let (pfx, local) = s.split_once(':')?;
    let prefixes = default_prefixes();
    let ns = prefixes.get(pfx)?;
    Some(format!("{ns}{local}"))
}

/// Render an IRI as a CURIE against the default prefixes when possible.
pub fn curie(iri: &str) -> String {
    for (pfx, ns) in default_prefixes() {
        if let Some(local) = iri.strip_prefix(&ns) {
            if !local.is_empty() && !local.contains('/') && !local.contains('#') {
                return format!("{pfx}:{local}");
            }
        }
    }
    iri.to_string()
}
