//! Unit registry with dimension-checked affine conversion. Each unit maps
//! into its dimension's base unit by `base = scale * x + offset`; all
//! arithmetic is exact rational, so round-trips and golden values come
//! out bit-for-bit.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::dec::Dec;
use crate::rdf::{Graph, Node};
use crate::report::{ViolationCode, ViolationReport};
use crate::temporal::TimeInstant;
use crate::vocab::{curie, RDFS_LABEL, REG_DIMENSION, REG_OFFSET, REG_SCALE};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum UnitError {
    #[error("unit {unit}: {what}")]
    BadDefinition { unit: String, what: String },
    #[error("unit {0}: scale must be positive")]
    NonpositiveScale(String),
    #[error("dimension {dimension} has more than one base unit ({first} and {second})")]
    DuplicateBaseUnit {
        dimension: String,
        first: String,
        second: String,
    },
    #[error("dimension {0} has no base unit (scale 1, offset 0)")]
    MissingBaseUnit(String),
    #[error("unknown unit '{0}'")]
    UnknownUnit(String),
    #[error("dimension mismatch: {from} is {from_dim} but {to} is {to_dim}")]
    DimensionMismatch {
        from: String,
        from_dim: String,
        to: String,
        to_dim: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitDef {
    pub iri: String,
    pub label: String,
    pub dimension: String,
    pub scale: Dec,
    pub offset: Dec,
}

impl UnitDef {
    pub fn is_base(&self) -> bool {
        self.scale == Dec::one() && self.offset.is_zero()
    }

    pub fn to_base(&self, value: &Dec) -> Dec {
        &(&self.scale * value) + &self.offset
    }
}

#[derive(Debug, Clone, Default)]
pub struct UnitRegistry {
    by_iri: BTreeMap<String, UnitDef>,
    by_label: BTreeMap<String, String>,
}

impl UnitRegistry {
    /// Load unit definitions from a graph in the seed annotation
    /// vocabulary: every subject with a `reg:dimension` is a unit.
    pub fn load(graph: &Graph) -> Result<UnitRegistry, UnitError> {
        let mut registry = UnitRegistry::default();
        let dim_pred = Node::iri(REG_DIMENSION);
        let mut base_by_dimension: BTreeMap<String, String> = BTreeMap::new();
        for t in graph.match_triples(None, Some(&dim_pred), None) {
            let Node::Iri(iri) = &t.subject else { continue };
            let dimension = match &t.object {
                Node::Literal(l) => l.lexical().to_string(),
                _ => {
                    return Err(UnitError::BadDefinition {
                        unit: iri.clone(),
                        what: "dimension must be a literal".to_string(),
                    })
                }
            };
            let scale = read_rational(graph, &t.subject, REG_SCALE, iri)?;
            let offset = read_rational(graph, &t.subject, REG_OFFSET, iri)?;
            if !scale.is_positive() {
                return Err(UnitError::NonpositiveScale(iri.clone()));
            }
            let label = match graph.object(&t.subject, RDFS_LABEL) {
                Some(Node::Literal(l)) => l.lexical().to_string(),
                _ => iri.rsplit('/').next().unwrap_or(iri).to_string(),
            };
            let def = UnitDef {
                iri: iri.clone(),
                label: label.clone(),
                dimension: dimension.clone(),
                scale,
                offset,
            };
            if def.is_base() {
                if let Some(first) = base_by_dimension.get(&dimension) {
                    return Err(UnitError::DuplicateBaseUnit {
                        dimension,
                        first: first.clone(),
                        second: iri.clone(),
                    });
                }
                base_by_dimension.insert(dimension.clone(), iri.clone());
            }
            registry.by_label.insert(label, iri.clone());
            registry.by_iri.insert(iri.clone(), def);
        }
        for def in registry.by_iri.values() {
            if !base_by_dimension.contains_key(&def.dimension) {
                return Err(UnitError::MissingBaseUnit(def.dimension.clone()));
            }
        }
        Ok(registry)
    }

    pub fn len(&self) -> usize {
        self.by_iri.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_iri.is_empty()
    }

    pub fn units(&self) -> impl Iterator<Item = &UnitDef> {
        self.by_iri.values()
    }

    pub fn get(&self, iri: &str) -> Option<&UnitDef> {
        self.by_iri.get(iri)
    }

    /// Look a unit up by full IRI, CURIE, or plain label.
    pub fn resolve(&self, name: &str) -> Result<&UnitDef, UnitError> {
        if let Some(def) = self.by_iri.get(name) {
            return Ok(def);
        }
        if let Some(expanded) = crate::vocab::resolve_curie(name) {
            if let Some(def) = self.by_iri.get(&expanded) {
                return Ok(def);
            }
        }
        if let Some(iri) = self.by_label.get(name) {
            return Ok(&self.by_iri[iri]);
        }
        Err(UnitError::UnknownUnit(name.to_string()))
    }

    /// Affine conversion: `(from.scale * value + from.offset - to.offset)
    /// / to.scale`, exact.
    pub fn convert(&self, value: &Dec, from: &UnitDef, to: &UnitDef) -> Result<Dec, UnitError> {
        if from.dimension != to.dimension {
            return Err(UnitError::DimensionMismatch {
                from: curie(&from.iri),
                from_dim: from.dimension.clone(),
                to: curie(&to.iri),
                to_dim: to.dimension.clone(),
            });
        }
        let base = from.to_base(value);
        Ok(&(&base - &to.offset) / &to.scale)
    }
}

fn read_rational(graph: &Graph, subject: &Node, pred: &str, unit: &str) -> Result<Dec, UnitError> {
    match graph.object(subject, pred) {
        Some(Node::Literal(l)) => Dec::parse(l.lexical()).map_err(|e| UnitError::BadDefinition {
            unit: unit.to_string(),
            what: format!("{pred} value: {e}"),
        }),
        _ => Err(UnitError::BadDefinition {
            unit: unit.to_string(),
            what: format!("missing {} annotation", curie(pred)),
        }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum MeasurementKind {
    Ratio,
    Interval,
}

impl MeasurementKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            MeasurementKind::Ratio => "ratio",
            MeasurementKind::Interval => "interval",
        }
    }
}

/// One dated measurement of a quality borne by some entity.
#[derive(Debug, Clone)]
pub struct MeasurementRecord {
    pub quality: Node,
    pub bearer: Node,
    pub kind: MeasurementKind,
    pub value: Dec,
    pub unit: String,
    pub when: TimeInstant,
}

/// Ratio-kind records need a zero-offset unit: a scale without an
/// absolute zero cannot carry ratio measurements.
pub fn validate_record(record: &MeasurementRecord, registry: &UnitRegistry) -> ViolationReport {
    let mut report = ViolationReport::new();
    match registry.get(&record.unit) {
        None => report.push(
            ViolationCode::DimensionUnknown,
            record.unit.clone(),
            "unit is not registered".to_string(),
        ),
        Some(def) => {
            if record.kind == MeasurementKind::Ratio && !def.offset.is_zero() {
                report.push(
                    ViolationCode::KindUnitMismatch,
                    record.unit.clone(),
                    format!(
                        "ratio measurement uses offset unit {} (offset {})",
                        def.label, def.offset
                    ),
                );
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::parse_turtle;

    fn seed() -> UnitRegistry {
        let graph = parse_turtle(include_str!("../seeds/units.ttl")).unwrap();
        UnitRegistry::load(&graph).unwrap()
    }

    fn d(s: &str) -> Dec {
        Dec::parse(s).unwrap()
    }

    #[test]
    fn seed_has_eight_units() {
        assert_eq!(seed().len(), 8);
    }

    #[test]
    fn inches_to_meters_is_exact() {
        let reg = seed();
        let inch = reg.resolve("inch").unwrap();
        let meter = reg.resolve("meter").unwrap();
        let result = reg.convert(&d("70"), inch, meter).unwrap();
        assert_eq!(result, d("1.778"));
        assert_eq!(result.to_sig_string(12), "1.778");
    }

    #[test]
    fn identity_conversion() {
        let reg = seed();
        let kg = reg.resolve("kilogram").unwrap();
        assert_eq!(reg.convert(&d("1250"), kg, kg).unwrap(), d("1250"));
    }

    #[test]
    fn celsius_to_fahrenheit_by_hand() {
        let reg = seed();
        let c = reg.resolve("celsius").unwrap();
        let f = reg.resolve("fahrenheit").unwrap();
        // 9/5 * 37 + 32 = 98.6
        assert_eq!(reg.convert(&d("37.0"), c, f).unwrap(), d("98.6"));
    }

    #[test]
    fn celsius_to_kelvin_offset() {
        let reg = seed();
        let c = reg.resolve("celsius").unwrap();
        let k = reg.resolve("kelvin").unwrap();
        assert_eq!(reg.convert(&d("0"), c, k).unwrap(), d("273.15"));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let reg = seed();
        let kg = reg.resolve("kilogram").unwrap();
        let m = reg.resolve("meter").unwrap();
        assert!(matches!(
            reg.convert(&d("5"), kg, m),
            Err(UnitError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn ratio_with_offset_unit_rejected() {
        let reg = seed();
        let record = MeasurementRecord {
            quality: Node::iri("http://d/q"),
            bearer: Node::iri("http://d/b"),
            kind: MeasurementKind::Ratio,
            value: d("36.8"),
            unit: crate::vocab::unit_iri("celsius"),
            when: TimeInstant::parse("2024-03-15T08:00:00Z").unwrap(),
        };
        assert!(validate_record(&record, &reg).has(ViolationCode::KindUnitMismatch));
    }

    #[test]
    fn ratio_with_zero_offset_passes() {
        let reg = seed();
        let record = MeasurementRecord {
            quality: Node::iri("http://d/q"),
            bearer: Node::iri("http://d/b"),
            kind: MeasurementKind::Ratio,
            value: d("1250"),
            unit: crate::vocab::unit_iri("kilogram"),
            when: TimeInstant::parse("2024-03-15T08:00:00Z").unwrap(),
        };
        assert!(validate_record(&record, &reg).is_empty());
    }

    #[test]
    fn interval_with_offset_unit_passes() {
        let reg = seed();
        let record = MeasurementRecord {
            quality: Node::iri("http://d/q"),
            bearer: Node::iri("http://d/b"),
            kind: MeasurementKind::Interval,
            value: d("36.8"),
            unit: crate::vocab::unit_iri("celsius"),
            when: TimeInstant::parse("2024-03-15T08:00:00Z").unwrap(),
        };
        assert!(validate_record(&record, &reg).is_empty());
    }

    #[test]
    fn duplicate_base_unit_rejected() {
        let doc = r#"
            @prefix reg: <https://cco-forge.dev/registry#> .
            @prefix u: <http://u/> .
            u:a reg:dimension "mass" ; reg:scale "1" ; reg:offset "0" .
            u:b reg:dimension "mass" ; reg:scale "1" ; reg:offset "0" .
        "#;
        let graph = parse_turtle(doc).unwrap();
        assert!(matches!(
            UnitRegistry::load(&graph),
            Err(UnitError::DuplicateBaseUnit { .. })
        ));
    }

    #[test]
    fn zero_scale_rejected() {
        let doc = r#"
            @prefix reg: <https://cco-forge.dev/registry#> .
            @prefix u: <http://u/> .
            u:a reg:dimension "mass" ; reg:scale "0" ; reg:offset "0" .
        "#;
        let graph = parse_turtle(doc).unwrap();
        assert_eq!(
            UnitRegistry::load(&graph).unwrap_err(),
            UnitError::NonpositiveScale("http://u/a".to_string())
        );
    }
}
