//! CSV ingestion pipelines: vehicle track logs expand row-by-row into
//! TRACK fragments, and sensor measurement logs run stasis/change
//! detection per subject and emit the corresponding fragments. Output is
//! deterministic: identical inputs mint identical individuals and produce
//! identical graphs.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::dec::Dec;
use crate::pattern::{builtin_template, instantiate, Binding, IdMinter, PatternError};
use crate::rdf::{Graph, Node};
use crate::registry::Taxonomy;
use crate::stasis::{
    detect_changes, detect_stasis, emit_change_graph, emit_stasis_graph, RangeSpec,
    RepresentativeValue, Sample, StasisError, TimeSeries,
};
use crate::temporal::{TemporalError, TimeInstant};
use crate::units::{MeasurementKind, UnitError, UnitRegistry};
use crate::vocab::ont;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("line {line}: {message}")]
    Row { line: u64, message: String },
    #[error("line {line}: duplicate observation for ({vehicle}, {timestamp})")]
    DuplicateRow {
        line: u64,
        vehicle: String,
        timestamp: String,
    },
    #[error("expected header {expected} but found {found}")]
    BadHeader { expected: String, found: String },
    #[error("no data rows")]
    Empty,
    #[error(transparent)]
    Unit(#[from] UnitError),
    #[error(transparent)]
    Stasis(#[from] StasisError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

const TRACK_HEADER: [&str; 5] = ["vehicle_id", "timestamp", "lat", "lon", "region_label"];
const SENSOR_HEADER: [&str; 5] = ["subject_id", "quality_curie", "timestamp", "value", "unit_curie"];

#[derive(Debug)]
pub struct TrackIngest {
    pub graph: Graph,
    pub rows: usize,
    pub vehicles: usize,
    pub acts: usize,
    pub track_points: usize,
    pub regions: usize,
    pub minted: usize,
}

#[derive(Debug)]
pub struct SeriesSummary {
    pub subject: String,
    pub quality: String,
    pub kind: MeasurementKind,
    pub samples: usize,
    pub segments: usize,
    pub events: usize,
}

#[derive(Debug)]
pub struct SensorIngest {
    pub graph: Graph,
    pub rows: usize,
    pub series: Vec<SeriesSummary>,
    pub segments: usize,
    pub events: usize,
}

fn check_header(
    reader: &mut csv::Reader<&[u8]>,
    expected: &[&str],
) -> Result<(), IngestError> {
    let found = reader
        .headers()
        .map_err(|e| IngestError::Row {
            line: 1,
            message: e.to_string(),
        })?
        .iter()
        .map(str::trim)
        .collect::<Vec<_>>();
    if found != expected {
        return Err(IngestError::BadHeader {
            expected: expected.join(","),
            found: found.join(","),
        });
    }
    Ok(())
}

fn row_line(record: &csv::StringRecord) -> u64 {
    record.position().map(|p| p.line()).unwrap_or(0)
}

/// Resolve a bare identifier, CURIE, or IRI to a node; bare identifiers
/// become readable IRIs under `<base>/<kind>/<id>`.
fn entity_node(id: &str, kind: &str, minter: &IdMinter) -> Node {
    if id.contains("://") || id.starts_with("urn:") {
        return Node::iri(id);
    }
    if id.contains(':') {
        if let Some(iri) = crate::vocab::resolve_curie(id) {
            return Node::iri(iri);
        }
    }
    if !id.is_empty()
        && id
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.')
    {
        return Node::iri(format!("{}/{}/{}", minter.base(), kind, id));
    }
    minter.mint(kind, id)
}

/// Expand a track log (`vehicle_id,timestamp,lat,lon,region_label`) into
/// TRACK fragments: one act of vehicle use per vehicle, one track point
/// per row, one region individual per distinct label.
pub fn ingest_track(
    csv_text: &str,
    minter: &IdMinter,
    taxonomy: &Taxonomy,
) -> Result<TrackIngest, IngestError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(csv_text.as_bytes());
    check_header(&mut reader, &TRACK_HEADER)?;

    struct Row {
        line: u64,
        vehicle_id: String,
        timestamp: String,
        lat: String,
        lon: String,
        region_label: String,
    }
    let mut rows = Vec::new();
    let mut seen: BTreeSet<(String, String)> = BTreeSet::new();
    for record in reader.records() {
        let record = record.map_err(|e| IngestError::Row {
            line: 0,
            message: e.to_string(),
        })?;
        let line = row_line(&record);
        if record.len() != TRACK_HEADER.len() {
            return Err(IngestError::Row {
                line,
                message: format!("expected {} columns, found {}", TRACK_HEADER.len(), record.len()),
            });
        }
        let get = |i: usize| record.get(i).unwrap_or_default().to_string();
        let row = Row {
            line,
            vehicle_id: get(0),
            timestamp: get(1),
            lat: get(2),
            lon: get(3),
            region_label: get(4),
        };
        if row.vehicle_id.is_empty() || row.timestamp.is_empty() {
            return Err(IngestError::Row {
                line,
                message: "vehicle_id and timestamp must be nonempty".to_string(),
            });
        }
        TimeInstant::parse(&row.timestamp).map_err(|e: TemporalError| IngestError::Row {
            line,
            message: e.to_string(),
        })?;
        if !seen.insert((row.vehicle_id.clone(), row.timestamp.clone())) {
            return Err(IngestError::DuplicateRow {
                line,
                vehicle: row.vehicle_id,
                timestamp: row.timestamp,
            });
        }
        rows.push(row);
    }

    let template = builtin_template("TRACK").expect("built-in");
    let mut graph = Graph::new();
    for (label, ns) in crate::vocab::default_prefixes() {
        if matches!(label.as_str(), "ont" | "rdfs" | "xsd") {
            graph.set_prefix(label, ns);
        }
    }
    let mut vehicles: BTreeSet<String> = BTreeSet::new();
    let mut regions: BTreeSet<String> = BTreeSet::new();
    for row in &rows {
        vehicles.insert(row.vehicle_id.clone());
        regions.insert(row.region_label.clone());
        let vehicle = entity_node(&row.vehicle_id, "vehicle", minter);
        let row_key = format!("{}\u{1f}{}", row.vehicle_id, row.timestamp);
        let binding = Binding::new()
            .bind_individual("vehicle", vehicle.clone(), ont("Vehicle"))
            .bind_value("lat", row.lat.clone())
            .bind_value("lon", row.lon.clone())
            .bind_value("region_label", row.region_label.clone())
            .bind_fresh("act", minter.mint("act", &row.vehicle_id))
            .bind_fresh("movement", minter.mint("process", &row_key))
            .bind_fresh("point", minter.mint("trackpoint", &row_key))
            .bind_fresh("region", minter.mint("region", &row.region_label));
        let fragment = instantiate(template, &binding, minter, taxonomy).map_err(|e| {
            IngestError::Row {
                line: row.line,
                message: e.to_string(),
            }
        })?;
        graph.absorb(&fragment.graph);
        graph
            .insert_parts(vehicle, Node::iri(crate::vocab::RDF_TYPE), Node::iri(ont("Vehicle")))
            .expect("well-formed");
    }
    let minted = vehicles.len() * 2 + rows.len() * 2 + regions.len();
    Ok(TrackIngest {
        graph,
        rows: rows.len(),
        vehicles: vehicles.len(),
        acts: vehicles.len(),
        track_points: rows.len(),
        regions: regions.len(),
        minted,
    })
}

pub struct SensorOptions {
    pub range: RangeSpec,
    /// Epsilon in the same unit as the range (scaled, not offset, into
    /// base units: offsets cancel in differences).
    pub epsilon: Dec,
    pub min_samples: usize,
    pub policy: RepresentativeValue,
}

/// Run stasis/change detection over a sensor log
/// (`subject_id,quality_curie,timestamp,value,unit_curie`; empty value =
/// not borne) grouped per (subject, quality), and emit one STASIS
/// fragment per segment plus one CHANGE fragment per event.
pub fn ingest_sensor(
    csv_text: &str,
    options: &SensorOptions,
    minter: &IdMinter,
    taxonomy: &Taxonomy,
    units: &UnitRegistry,
) -> Result<SensorIngest, IngestError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(csv_text.as_bytes());
    check_header(&mut reader, &SENSOR_HEADER)?;

    let mut grouped: BTreeMap<(String, String), Vec<(u64, Sample)>> = BTreeMap::new();
    let mut rows = 0usize;
    for record in reader.records() {
        let record = record.map_err(|e| IngestError::Row {
            line: 0,
            message: e.to_string(),
        })?;
        let line = row_line(&record);
        if record.len() != SENSOR_HEADER.len() {
            return Err(IngestError::Row {
                line,
                message: format!("expected {} columns, found {}", SENSOR_HEADER.len(), record.len()),
            });
        }
        rows += 1;
        let get = |i: usize| record.get(i).unwrap_or_default().to_string();
        let subject = get(0);
        let quality_curie = get(1);
        let quality = crate::vocab::resolve_curie(&quality_curie).ok_or_else(|| IngestError::Row {
            line,
            message: format!("unresolvable quality CURIE '{quality_curie}'"),
        })?;
        let when = TimeInstant::parse(&get(2)).map_err(|e| IngestError::Row {
            line,
            message: e.to_string(),
        })?;
        let raw_value = get(3);
        let value = if raw_value.is_empty() {
            None
        } else {
            Some(Dec::parse(&raw_value).map_err(|e| IngestError::Row {
                line,
                message: e.to_string(),
            })?)
        };
        let unit = units.resolve(&get(4))?.iri.clone();
        grouped
            .entry((subject, quality))
            .or_default()
            .push((line, Sample { when, value, unit }));
    }
    if grouped.is_empty() {
        return Err(IngestError::Empty);
    }

    let mut graph = Graph::new();
    for (label, ns) in crate::vocab::default_prefixes() {
        if matches!(label.as_str(), "ont" | "rdfs" | "xsd") {
            graph.set_prefix(label, ns);
        }
    }
    let mut summaries = Vec::new();
    let mut total_segments = 0;
    let mut total_events = 0;
    for ((subject, quality), samples) in grouped {
        let kind = if samples.iter().any(|(_, s)| {
            units
                .get(&s.unit)
                .map(|d| !d.offset.is_zero())
                .unwrap_or(false)
        }) {
            MeasurementKind::Interval
        } else {
            MeasurementKind::Ratio
        };
        let first_line = samples.first().map(|(l, _)| *l).unwrap_or(0);
        let bearer = entity_node(&subject, "subject", minter);
        let series = TimeSeries::new(
            quality.clone(),
            bearer,
            kind,
            samples.into_iter().map(|(_, s)| s).collect(),
            units,
        )
        .map_err(|e| IngestError::Row {
            line: first_line,
            message: format!("series ({subject}, {quality}): {e}"),
        })?;

        let segments = detect_stasis(&series, &options.range, options.min_samples, units)?;
        let epsilon_base = {
            let range_unit = units.resolve(&options.range.unit)?;
            &range_unit.scale * &options.epsilon
        };
        let events = detect_changes(&series, &epsilon_base, units);
        for segment in &segments {
            let fragment = emit_stasis_graph(segment, &series, options.policy, minter, taxonomy)?;
            graph.absorb(&fragment);
        }
        for event in &events {
            let fragment = emit_change_graph(event, &series, minter, taxonomy)?;
            graph.absorb(&fragment);
        }
        total_segments += segments.len();
        total_events += events.len();
        summaries.push(SeriesSummary {
            subject,
            quality,
            kind,
            samples: series.samples().len(),
            segments: segments.len(),
            events: events.len(),
        });
    }
    Ok(SensorIngest {
        graph,
        rows,
        series: summaries,
        segments: total_segments,
        events: total_events,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::validate;
    use crate::seeds;

    fn minter() -> IdMinter {
        IdMinter::new("https://cco-forge.dev/data", "test")
    }

    const TRACK_CSV: &str = "\
vehicle_id,timestamp,lat,lon,region_label
truck1,2004-05-17T13:00:00Z,42.8864,-78.8784,Buffalo NY
truck1,2004-05-17T15:30:00Z,43.1009,-76.1474,New York State Thruway Exit 33 Toll Plaza
truck1,2004-05-17T17:45:00Z,43.2128,-75.4557,Rome NY
";

    #[test]
    fn three_rows_one_act_three_points() {
        let result = ingest_track(TRACK_CSV, &minter(), seeds::taxonomy()).unwrap();
        assert_eq!(result.acts, 1);
        assert_eq!(result.track_points, 3);
        assert_eq!(result.regions, 3);
        let acts = result.graph.match_triples(
            None,
            Some(&Node::iri(crate::vocab::RDF_TYPE)),
            Some(&Node::iri(ont("ActOfVehicleUse"))),
        );
        assert_eq!(acts.len(), 1);
        let points = result.graph.match_triples(
            None,
            Some(&Node::iri(crate::vocab::RDF_TYPE)),
            Some(&Node::iri(ont("VehicleTrackPoint"))),
        );
        assert_eq!(points.len(), 3);
    }

    #[test]
    fn track_output_validates_and_checks_clean() {
        let result = ingest_track(TRACK_CSV, &minter(), seeds::taxonomy()).unwrap();
        let vehicle = Node::iri("https://cco-forge.dev/data/vehicle/truck1");
        let report = validate(
            &result.graph,
            builtin_template("TRACK").unwrap(),
            &vehicle,
            seeds::taxonomy(),
        )
        .unwrap();
        assert!(report.is_conformant(), "{report:?}");
        assert!(seeds::taxonomy().check_instances(&result.graph).is_empty());
    }

    #[test]
    fn empty_track_csv_is_zero_triples() {
        let result = ingest_track(
            "vehicle_id,timestamp,lat,lon,region_label\n",
            &minter(),
            seeds::taxonomy(),
        )
        .unwrap();
        assert_eq!(result.graph.len(), 0);
        assert_eq!(result.rows, 0);
    }

    #[test]
    fn duplicate_row_reports_line() {
        let csv = "\
vehicle_id,timestamp,lat,lon,region_label
truck1,2004-05-17T13:00:00Z,1,2,A
truck1,2004-05-17T13:00:00Z,3,4,B
";
        match ingest_track(csv, &minter(), seeds::taxonomy()) {
            Err(IngestError::DuplicateRow { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected duplicate-row error, got {other:?}"),
        }
    }

    #[test]
    fn malformed_timestamp_reports_line() {
        let csv = "\
vehicle_id,timestamp,lat,lon,region_label
truck1,not-a-time,1,2,A
";
        match ingest_track(csv, &minter(), seeds::taxonomy()) {
            Err(IngestError::Row { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected row error, got {other:?}"),
        }
    }

    #[test]
    fn shared_region_label_reuses_individual() {
        let csv = "\
vehicle_id,timestamp,lat,lon,region_label
truck1,2004-05-17T13:00:00Z,1,2,Rome NY
truck2,2004-05-17T13:00:00Z,3,4,Rome NY
";
        let result = ingest_track(csv, &minter(), seeds::taxonomy()).unwrap();
        assert_eq!(result.regions, 1);
        assert_eq!(result.acts, 2);
    }

    const MARY_CSV: &str = "\
subject_id,quality_curie,timestamp,value,unit_curie
mary,ont:Temperature,2024-03-15T06:00:00Z,36.8,celsius
mary,ont:Temperature,2024-03-15T10:00:00Z,36.9,celsius
mary,ont:Temperature,2024-03-15T14:00:00Z,37.0,celsius
mary,ont:Temperature,2024-03-15T18:00:00Z,36.9,celsius
";

    fn sensor_options() -> SensorOptions {
        SensorOptions {
            range: RangeSpec::new(
                Dec::parse("36.0").unwrap(),
                Dec::parse("37.5").unwrap(),
                "celsius".to_string(),
            )
            .unwrap(),
            epsilon: Dec::parse("0.5").unwrap(),
            min_samples: 1,
            policy: RepresentativeValue::Mean,
        }
    }

    #[test]
    fn mary_fixture_one_stasis_no_changes() {
        let result = ingest_sensor(
            MARY_CSV,
            &sensor_options(),
            &minter(),
            seeds::taxonomy(),
            seeds::units(),
        )
        .unwrap();
        assert_eq!(result.segments, 1);
        assert_eq!(result.events, 0);
        assert!(seeds::taxonomy().check_instances(&result.graph).is_empty());
    }

    #[test]
    fn spike_yields_two_stases_two_changes() {
        let csv = "\
subject_id,quality_curie,timestamp,value,unit_curie
mary,ont:Temperature,2024-03-15T06:00:00Z,36.8,celsius
mary,ont:Temperature,2024-03-15T10:00:00Z,39.2,celsius
mary,ont:Temperature,2024-03-15T14:00:00Z,36.9,celsius
";
        let result = ingest_sensor(
            csv,
            &sensor_options(),
            &minter(),
            seeds::taxonomy(),
            seeds::units(),
        )
        .unwrap();
        assert_eq!(result.segments, 2);
        assert_eq!(result.events, 2);
    }

    #[test]
    fn empty_sensor_csv_is_an_error() {
        let err = ingest_sensor(
            "subject_id,quality_curie,timestamp,value,unit_curie\n",
            &sensor_options(),
            &minter(),
            seeds::taxonomy(),
            seeds::units(),
        )
        .unwrap_err();
        assert!(matches!(err, IngestError::Empty));
    }

    #[test]
    fn bad_header_is_an_error() {
        let err = ingest_track("a,b,c\n1,2,3\n", &minter(), seeds::taxonomy()).unwrap_err();
        assert!(matches!(err, IngestError::BadHeader { .. }));
    }
}
