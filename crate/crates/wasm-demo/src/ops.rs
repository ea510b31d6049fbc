//! Demo operations behind the wasm exports, kept free of wasm types so
//! they test on any target.

use serde_json::json;

use cco_forge_core::dec::Dec;
use cco_forge_core::ingest::{ingest_sensor, ingest_track, SensorOptions};
use cco_forge_core::pattern::{
    builtin_template, builtin_templates, template_to_json, validate, IdMinter,
};
use cco_forge_core::rdf::{parse_turtle, serialize_turtle, Node};
use cco_forge_core::seeds;
use cco_forge_core::stasis::{RangeSpec, RepresentativeValue};
use cco_forge_core::vocab;

pub const SAMPLE_SENSOR_CSV: &str = "\
subject_id,quality_curie,timestamp,value,unit_curie
mary,ont:Temperature,2024-03-15T06:00:00Z,36.8,celsius
mary,ont:Temperature,2024-03-15T08:00:00Z,36.9,celsius
mary,ont:Temperature,2024-03-15T10:00:00Z,37.0,celsius
mary,ont:Temperature,2024-03-15T12:00:00Z,38.9,celsius
mary,ont:Temperature,2024-03-15T14:00:00Z,39.2,celsius
mary,ont:Temperature,2024-03-15T16:00:00Z,37.1,celsius
mary,ont:Temperature,2024-03-15T18:00:00Z,36.9,celsius
mary,ont:Temperature,2024-03-15T20:00:00Z,,celsius
mary,ont:Temperature,2024-03-15T22:00:00Z,36.8,celsius
";

fn err_json(message: impl std::fmt::Display) -> String {
    json!({ "error": message.to_string() }).to_string()
}

pub fn templates_json() -> String {
    let list: Vec<serde_json::Value> = builtin_templates().iter().map(template_to_json).collect();
    json!({ "templates": list }).to_string()
}

pub fn units_json() -> String {
    let units: Vec<serde_json::Value> = seeds::units()
        .units()
        .map(|u| {
            json!({
                "iri": u.iri,
                "label": u.label,
                "dimension": u.dimension,
                "scale": u.scale.to_string(),
                "offset": u.offset.to_string(),
            })
        })
        .collect();
    json!({ "units": units }).to_string()
}

pub fn validate_turtle(turtle: &str, template_name: &str, focus: &str) -> String {
    let graph = match parse_turtle(turtle) {
        Ok(g) => g,
        Err(e) => return err_json(format!("parse error: {e}")),
    };
    let Some(template) = builtin_template(template_name) else {
        return err_json(format!("unknown template '{template_name}'"));
    };
    let focus_iri = graph
        .prefixes()
        .iter()
        .find_map(|(label, ns)| {
            focus
                .strip_prefix(&format!("{label}:"))
                .map(|local| format!("{ns}{local}"))
        })
        .or_else(|| vocab::resolve_curie(focus))
        .unwrap_or_else(|| focus.to_string());
    let focus_node = Node::iri(focus_iri);
    let taxonomy = seeds::taxonomy();
    match validate(&graph, template, &focus_node, taxonomy) {
        Ok(report) => {
            let violations = taxonomy.check_instances(&graph);
            json!({
                "conformance": serde_json::to_value(&report).unwrap(),
                "violations": serde_json::to_value(&violations).unwrap(),
                "triples": graph.len(),
            })
            .to_string()
        }
        Err(e) => err_json(e),
    }
}

pub fn analyze_series(
    csv: &str,
    range_lo: &str,
    range_hi: &str,
    unit: &str,
    epsilon: &str,
    min_samples: u32,
    policy: &str,
) -> String {
    let parse_dec = |s: &str, what: &str| {
        Dec::parse(s).map_err(|e| format!("{what}: {e}"))
    };
    let inner = || -> Result<String, String> {
        let lo = parse_dec(range_lo, "range-lo")?;
        let hi = parse_dec(range_hi, "range-hi")?;
        let epsilon = parse_dec(epsilon, "epsilon")?;
        let range = RangeSpec::new(lo, hi, unit.to_string()).map_err(|e| e.to_string())?;
        let policy = RepresentativeValue::parse(policy).unwrap_or_default();
        let options = SensorOptions {
            range,
            epsilon,
            min_samples: min_samples.max(1) as usize,
            policy,
        };
        let minter = IdMinter::new(vocab::DATA_NS, "demo");
        let taxonomy = seeds::taxonomy();
        let units = seeds::units();
        let result =
            ingest_sensor(csv, &options, &minter, taxonomy, units).map_err(|e| e.to_string())?;

        // re-read the per-subject samples for charting
        let mut samples = Vec::new();
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(csv.as_bytes());
        for record in reader.records().flatten() {
            let when = record.get(2).unwrap_or_default().to_string();
            let value = record.get(3).unwrap_or_default().to_string();
            let unit_name = record.get(4).unwrap_or_default();
            let base = if value.is_empty() {
                None
            } else {
                let def = units.resolve(unit_name).map_err(|e| e.to_string())?;
                Some(def.to_base(&parse_dec(&value, "value")?).to_string())
            };
            samples.push(json!({
                "subject": record.get(0).unwrap_or_default(),
                "when": when,
                "value": if value.is_empty() { serde_json::Value::Null } else { json!(value) },
                "base": base,
            }));
        }
        let series: Vec<serde_json::Value> = result
            .series
            .iter()
            .map(|s| {
                json!({
                    "subject": s.subject,
                    "quality": vocab::curie(&s.quality),
                    "kind": s.kind.as_str(),
                    "samples": s.samples,
                    "segments": s.segments,
                    "events": s.events,
                })
            })
            .collect();
        Ok(json!({
            "samples": samples,
            "series": series,
            "segments": result.segments,
            "events": result.events,
            "turtle": serialize_turtle(&result.graph),
            "triples": result.graph.len(),
        })
        .to_string())
    };
    inner().unwrap_or_else(err_json)
}

pub fn convert_value(value: &str, from: &str, to: &str) -> String {
    let inner = || -> Result<String, String> {
        let v = Dec::parse(value).map_err(|e| e.to_string())?;
        let units = seeds::units();
        let from_def = units.resolve(from).map_err(|e| e.to_string())?;
        let to_def = units.resolve(to).map_err(|e| e.to_string())?;
        let result = units.convert(&v, from_def, to_def).map_err(|e| e.to_string())?;
        Ok(json!({
            "value": value,
            "from": from_def.label,
            "to": to_def.label,
            "result": result.to_sig_string(12),
        })
        .to_string())
    };
    inner().unwrap_or_else(err_json)
}

pub fn sample_turtle() -> String {
    let minter = IdMinter::new(vocab::DATA_NS, "demo");
    let csv = "\
vehicle_id,timestamp,lat,lon,region_label
truck1,2004-05-17T13:00:00Z,42.8864,-78.8784,Buffalo NY
truck1,2004-05-17T15:30:00Z,43.1009,-76.1474,New York State Thruway Exit 33 Toll Plaza
truck1,2004-05-17T17:45:00Z,43.2128,-75.4557,Rome NY
";
    let result = ingest_track(csv, &minter, seeds::taxonomy()).expect("demo fixture ingests");
    serialize_turtle(&result.graph)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analyze_sample_finds_segments_and_events() {
        let out = analyze_series(SAMPLE_SENSOR_CSV, "36.0", "37.5", "celsius", "0.5", 1, "mean");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!(v["error"].is_null(), "{out}");
        assert!(v["segments"].as_u64().unwrap() >= 2, "{out}");
        assert!(v["events"].as_u64().unwrap() >= 2, "{out}");
        assert!(v["turtle"].as_str().unwrap().contains("ont:Stasis"));
    }

    #[test]
    fn validate_sample_track_is_conformant() {
        let turtle = sample_turtle();
        let out = validate_turtle(
            &turtle,
            "TRACK",
            "https://cco-forge.dev/data/vehicle/truck1",
        );
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["conformance"]["status"], "conformant", "{out}");
        assert_eq!(v["violations"]["violations"].as_array().unwrap().len(), 0);
    }

    #[test]
    fn convert_inch_to_meter() {
        let out = convert_value("70", "inch", "meter");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"], "1.778", "{out}");
    }

    #[test]
    fn errors_come_back_as_json() {
        let v: serde_json::Value =
            serde_json::from_str(&convert_value("70", "inch", "kilogram")).unwrap();
        assert!(v["error"].as_str().unwrap().contains("dimension mismatch"));
    }
}
