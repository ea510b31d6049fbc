//! Violation reporting shared by the registry, pattern, and unit checks.

use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum ViolationCode {
    #[serde(rename = "CYCLE")]
    Cycle,
    #[serde(rename = "DISJOINT_TYPES")]
    DisjointTypes,
    #[serde(rename = "UNKNOWN_TERM")]
    UnknownTerm,
    #[serde(rename = "BAD_PREDICATE_KIND")]
    BadPredicateKind,
    #[serde(rename = "KIND_UNIT_MISMATCH")]
    KindUnitMismatch,
    #[serde(rename = "DIMENSION_UNKNOWN")]
    DimensionUnknown,
}

impl fmt::Display for ViolationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ViolationCode::Cycle => "CYCLE",
            ViolationCode::DisjointTypes => "DISJOINT_TYPES",
            ViolationCode::UnknownTerm => "UNKNOWN_TERM",
            ViolationCode::BadPredicateKind => "BAD_PREDICATE_KIND",
            ViolationCode::KindUnitMismatch => "KIND_UNIT_MISMATCH",
            ViolationCode::DimensionUnknown => "DIMENSION_UNKNOWN",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub code: ViolationCode,
    /// IRI (or blank label) the violation is anchored at.
    pub focus: String,
    pub message: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ViolationReport {
    pub violations: Vec<Violation>,
}

impl ViolationReport {
    pub fn new() -> ViolationReport {
        ViolationReport::default()
    }

    pub fn push(&mut self, code: ViolationCode, focus: impl Into<String>, message: impl Into<String>) {
        self.violations.push(Violation {
            code,
            focus: focus.into(),
            message: message.into(),
        });
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn has(&self, code: ViolationCode) -> bool {
        self.violations.iter().any(|v| v.code == code)
    }

    pub fn merge(&mut self, other: ViolationReport) {
        self.violations.extend(other.violations);
    }

    /// Deterministic ordering for report output.
    pub fn sorted(mut self) -> ViolationReport {
        self.violations.sort();
        self.violations.dedup();
        self
    }
}

impl fmt::Display for ViolationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "no violations");
        }
        for v in &self.violations {
            writeln!(f, "{} at {}: {}", v.code, v.focus, v.message)?;
        }
        Ok(())
    }
}
