//! Shipped seed data: the curated term registry and the unit registry,
//! embedded at build time and parsed on first use.

use std::sync::OnceLock;

use crate::rdf::{parse_turtle, Graph};
use crate::registry::{load_registry, Taxonomy};
use crate::units::UnitRegistry;

pub const REGISTRY_TTL: &str = include_str!("../seeds/registry.ttl");
pub const UNITS_TTL: &str = include_str!("../seeds/units.ttl");

pub fn registry_graph() -> Graph {
    parse_turtle(REGISTRY_TTL).expect("shipped registry seed parses")
}

pub fn units_graph() -> Graph {
    parse_turtle(UNITS_TTL).expect("shipped units seed parses")
}

/// The seed taxonomy, loaded once.
pub fn taxonomy() -> &'static Taxonomy {
    static CACHE: OnceLock<Taxonomy> = OnceLock::new();
    CACHE.get_or_init(|| load_registry(&registry_graph()).expect("shipped registry seed is well-formed"))
}

/// The seed unit registry, loaded once.
pub fn units() -> &'static UnitRegistry {
    static CACHE: OnceLock<UnitRegistry> = OnceLock::new();
    CACHE.get_or_init(|| UnitRegistry::load(&units_graph()).expect("shipped units seed is well-formed"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vocab::ont;

    #[test]
    fn seed_taxonomy_loads_strictly() {
        let t = taxonomy();
        assert!(t.len() > 80, "expected the full curated registry, got {}", t.len());
    }

    #[test]
    fn seed_taxonomy_checks_clean() {
        assert!(taxonomy().check().is_empty());
    }

    #[test]
    fn truck_ancestor_chain() {
        let t = taxonomy();
        for (a, b) in [
            ("Truck", "GroundMotorVehicle"),
            ("GroundMotorVehicle", "GroundVehicle"),
            ("GroundVehicle", "Vehicle"),
            ("Vehicle", "MaterialArtifact"),
            ("MaterialArtifact", "MaterialEntity"),
            ("MaterialEntity", "IndependentContinuant"),
            ("IndependentContinuant", "Continuant"),
        ] {
            assert!(
                t.is_subclass_of(&ont(a), &ont(b)).unwrap(),
                "{a} should lie under {b}"
            );
        }
        assert!(t.is_subclass_of(&ont("Truck"), &ont("MaterialEntity")).unwrap());
    }

    #[test]
    fn quality_is_not_realizable() {
        let t = taxonomy();
        assert!(!t
            .is_subclass_of(&ont("Quality"), &ont("RealizableEntity"))
            .unwrap());
    }

    #[test]
    fn magnetism_and_mass_parents() {
        let t = taxonomy();
        assert!(t
            .is_subclass_of(&ont("Magnetism"), &ont("RealizableEntity"))
            .unwrap());
        assert!(t
            .is_subclass_of(&ont("Mass"), &ont("SpecificallyDependentContinuant"))
            .unwrap());
    }

    #[test]
    fn every_class_reaches_entity() {
        let t = taxonomy();
        let root = ont("Entity");
        for entry in t.entries() {
            if entry.kind == crate::registry::TermKind::Class {
                assert!(
                    t.is_subclass_of(&entry.iri, &root).unwrap(),
                    "{} does not reach the root",
                    entry.iri
                );
            }
        }
    }

    #[test]
    fn multi_month_interval_is_not_a_temporal_interval() {
        let t = taxonomy();
        assert!(!t
            .is_subclass_of(&ont("MultiMonthTemporalInterval"), &ont("TemporalInterval"))
            .unwrap());
        assert!(t
            .is_subclass_of(&ont("MultiMonthTemporalInterval"), &ont("TemporalRegion"))
            .unwrap());
    }

    #[test]
    fn seed_units_load() {
        assert_eq!(units().len(), 8);
    }
}
