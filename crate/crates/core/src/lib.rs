//! Toolkit for working with mid-level ontology data built on the Basic
//! Formal Ontology and the Common Core suite: a Turtle subset parser and
//! triple store, a curated term registry with structural consistency
//! checks, design-pattern templates with conformance validation, temporal
//! containment operators, an affine unit-conversion registry, and
//! stasis/change detection over measurement series.

pub mod dec;
pub mod ingest;
pub mod pattern;
pub mod rdf;
pub mod registry;
pub mod report;
pub mod seeds;
pub mod stasis;
pub mod temporal;
pub mod units;
pub mod vocab;
