//! The shipped pattern templates. Each encodes one of the documented
//! modeling shapes: vehicle tracking, temporal granularity ladders,
//! quality measurement, artifact-model prescription, stasis records, and
//! gain/loss/variation change processes.

use std::sync::OnceLock;

use crate::pattern::{ParamExpect, PatternTemplate};

pub const BUILTIN_NAMES: [&str; 6] = [
    "TRACK",
    "TEMPORAL",
    "MEASURE",
    "ARTIFACT_MODEL",
    "STASIS",
    "CHANGE",
];

fn class(c: &str) -> ParamExpect {
    ParamExpect::Class(crate::vocab::ont(c))
}

fn string_token() -> ParamExpect {
    ParamExpect::Datatype(crate::vocab::XSD_STRING.to_string())
}

fn track() -> PatternTemplate {
    PatternTemplate::build(
        "TRACK",
        "vehicle",
        vec![
            ("vehicle", class("Vehicle")),
            ("lat", string_token()),
            ("lon", string_token()),
            ("region_label", string_token()),
        ],
        vec![
            ("act", "act"),
            ("movement", "process"),
            ("point", "trackpoint"),
            ("region", "region"),
        ],
        vec![
            ("?vehicle", "ont:participatesIn", "?act", false),
            ("?act", "rdf:type", "ont:ActOfVehicleUse", false),
            ("?act", "ont:hasProcessPart", "?movement", false),
            ("?movement", "rdf:type", "ont:Process", false),
            ("?movement", "ont:occursAt", "?point", false),
            ("?point", "rdf:type", "ont:VehicleTrackPoint", false),
            ("?point", "ont:latitude", "?lat", false),
            ("?point", "ont:longitude", "?lon", false),
            ("?point", "ont:partOf", "?region", false),
            ("?region", "rdf:type", "ont:GeospatialRegion", false),
            ("?region", "rdfs:label", "?region_label", false),
        ],
    )
    .expect("TRACK template is well-formed")
}

fn temporal() -> PatternTemplate {
    PatternTemplate::build(
        "TEMPORAL",
        "process",
        vec![
            ("process", class("Process")),
            ("instant_token", string_token()),
            ("interval_label", string_token()),
            ("outer_label", string_token()),
            ("multi_label", string_token()),
        ],
        vec![
            ("interval", "interval"),
            ("instant", "instant"),
            ("outer", "interval"),
            ("multi", "interval"),
        ],
        vec![
            ("?process", "ont:occupiesTemporalRegion", "?interval", false),
            ("?interval", "rdf:type", "ont:TemporalInterval", false),
            ("?interval", "rdfs:label", "?interval_label", false),
            ("?instant", "rdf:type", "ont:TemporalRegion", false),
            ("?instant", "ont:isInsideInstantOf", "?interval", false),
            ("?instant", "ont:isTokenizedBy", "?instant_token", false),
            ("?interval", "ont:intervalDuring", "?outer", false),
            ("?outer", "rdf:type", "ont:TemporalInterval", false),
            ("?outer", "rdfs:label", "?outer_label", false),
            ("?outer", "ont:intervalDuring", "?multi", true),
            ("?multi", "rdf:type", "ont:MultiMonthTemporalInterval", true),
            ("?multi", "rdfs:label", "?multi_label", true),
        ],
    )
    .expect("TEMPORAL template is well-formed")
}

fn measure() -> PatternTemplate {
    PatternTemplate::build(
        "MEASURE",
        "quality",
        vec![
            ("quality", class("SpecificallyDependentContinuant")),
            ("bearer", class("IndependentContinuant")),
            ("unit", class("MeasurementUnit")),
            (
                "measurement_class",
                class("DescriptiveInformationContentEntity"),
            ),
            ("value", string_token()),
        ],
        vec![("measurement", "measurement"), ("carrier", "carrier")],
        vec![
            ("?quality", "ont:inheresIn", "?bearer", false),
            ("?quality", "ont:isSubjectOf", "?measurement", false),
            ("?measurement", "rdf:type", "?measurement_class", false),
            ("?carrier", "ont:concretizes", "?measurement", false),
            ("?carrier", "rdf:type", "ont:InformationBearingEntity", false),
            ("?measurement", "ont:usesMeasurementUnit", "?unit", false),
            ("?measurement", "ont:isTokenizedBy", "?value", false),
        ],
    )
    .expect("MEASURE template is well-formed")
}

fn artifact_model() -> PatternTemplate {
    PatternTemplate::build(
        "ARTIFACT_MODEL",
        "model",
        vec![
            ("prescribed", class("SpecificallyDependentContinuant")),
            ("name_label", string_token()),
        ],
        vec![("model", "model"), ("name", "name")],
        vec![
            ("?model", "rdf:type", "ont:ArtifactModel", false),
            ("?model", "ont:prescribes", "?prescribed", false),
            ("?model", "ont:designatedBy", "?name", false),
            ("?name", "rdf:type", "ont:ArtifactModelName", false),
            ("?name", "ont:isTokenizedBy", "?name_label", false),
        ],
    )
    .expect("ARTIFACT_MODEL template is well-formed")
}

fn stasis() -> PatternTemplate {
    PatternTemplate::build(
        "STASIS",
        "stasis",
        vec![
            ("quality", class("SpecificallyDependentContinuant")),
            ("value", string_token()),
            ("date_token", string_token()),
            ("date_label", string_token()),
        ],
        vec![
            ("stasis", "stasis"),
            ("measurement", "measurement"),
            ("interval", "interval"),
            ("date", "date"),
        ],
        vec![
            ("?stasis", "rdf:type", "ont:Stasis", false),
            ("?stasis", "ont:hasParticipant", "?quality", false),
            ("?quality", "ont:isSubjectOf", "?measurement", false),
            (
                "?measurement",
                "rdf:type",
                "ont:IntervalMeasurementInformationContentEntity",
                false,
            ),
            ("?measurement", "ont:isTokenizedBy", "?value", false),
            ("?stasis", "ont:occupiesTemporalRegion", "?interval", false),
            ("?interval", "rdf:type", "ont:TemporalInterval", false),
            ("?interval", "ont:designatedBy", "?date", false),
            ("?date", "rdf:type", "ont:DateIdentifier", false),
            ("?date", "ont:isTokenizedBy", "?date_token", false),
            ("?date", "rdfs:label", "?date_label", false),
        ],
    )
    .expect("STASIS template is well-formed")
}

fn change() -> PatternTemplate {
    PatternTemplate::build(
        "CHANGE",
        "change",
        vec![
            ("bearer", class("IndependentContinuant")),
            ("dependent", class("Continuant")),
            ("change_class", class("Change")),
        ],
        vec![("change", "change")],
        vec![
            ("?bearer", "ont:participatesIn", "?change", false),
            ("?change", "rdf:type", "?change_class", false),
            ("?change", "ont:hasParticipant", "?dependent", false),
        ],
    )
    .expect("CHANGE template is well-formed")
}

pub fn builtin_templates() -> &'static [PatternTemplate] {
    static CACHE: OnceLock<Vec<PatternTemplate>> = OnceLock::new();
    CACHE.get_or_init(|| {
        vec![
            track(),
            temporal(),
            measure(),
            artifact_model(),
            stasis(),
            change(),
        ]
    })
}

pub fn builtin_template(name: &str) -> Option<&'static PatternTemplate> {
    builtin_templates().iter().find(|t| t.name == name)
}
