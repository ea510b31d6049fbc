//! Stasis and change detection over measurement time series, and emission
//! of the corresponding graph fragments. Values are compared in base
//! units with exact arithmetic, so segment boundaries are invariant under
//! unit conversion of the whole series.

use thiserror::Error;

use crate::dec::Dec;
use crate::pattern::{builtin_template, instantiate, Binding, IdMinter, PatternError};
use crate::rdf::{Graph, Node};
use crate::registry::{RegistryError, Taxonomy};
use crate::temporal::{TimeInstant, TimeInterval};
use crate::units::{MeasurementKind, UnitError, UnitRegistry};
use crate::vocab::{ont, RDF_TYPE};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StasisError {
    #[error("series is empty")]
    EmptySeries,
    #[error("sample {0}: instants must be strictly increasing")]
    OutOfOrder(usize),
    #[error(transparent)]
    Unit(#[from] UnitError),
    #[error("range unit dimension '{range}' does not match series dimension '{series}'")]
    RangeDimensionMismatch { range: String, series: String },
    #[error("quality class {0} lies under neither specifically nor generically dependent continuant")]
    UnknownDependentCategory(String),
    #[error(transparent)]
    Registry(#[from] RegistryError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

/// One reading: an absent value means the dependent entity is not borne
/// at that instant.
#[derive(Debug, Clone)]
pub struct Sample {
    pub when: TimeInstant,
    pub value: Option<Dec>,
    /// Unit IRI; samples of one series may differ in unit but must agree
    /// in dimension.
    pub unit: String,
}

#[derive(Debug, Clone)]
pub struct TimeSeries {
    /// Class of the measured dependent entity, e.g. a temperature class.
    pub quality_class: String,
    pub bearer: Node,
    pub kind: MeasurementKind,
    samples: Vec<Sample>,
}

impl TimeSeries {
    pub fn new(
        quality_class: String,
        bearer: Node,
        kind: MeasurementKind,
        samples: Vec<Sample>,
        units: &UnitRegistry,
    ) -> Result<TimeSeries, StasisError> {
        if samples.is_empty() {
            return Err(StasisError::EmptySeries);
        }
        let mut dimension: Option<String> = None;
        for (i, sample) in samples.iter().enumerate() {
            if i > 0 && samples[i - 1].when >= sample.when {
                return Err(StasisError::OutOfOrder(i));
            }
            let def = units
                .get(&sample.unit)
                .ok_or_else(|| UnitError::UnknownUnit(sample.unit.clone()))?;
            match &dimension {
                None => dimension = Some(def.dimension.clone()),
                Some(d) if *d != def.dimension => {
                    return Err(StasisError::RangeDimensionMismatch {
                        range: def.dimension.clone(),
                        series: d.clone(),
                    })
                }
                _ => {}
            }
        }
        Ok(TimeSeries {
            quality_class,
            bearer,
            kind,
            samples,
        })
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn dimension(&self, units: &UnitRegistry) -> String {
        units.get(&self.samples[0].unit).expect("validated at construction").dimension.clone()
    }

    fn base_value(&self, idx: usize, units: &UnitRegistry) -> Option<Dec> {
        let sample = &self.samples[idx];
        sample
            .value
            .as_ref()
            .map(|v| units.get(&sample.unit).expect("validated").to_base(v))
    }
}

/// Closed normalcy range, interpreted in `unit`.
#[derive(Debug, Clone)]
pub struct RangeSpec {
    pub lo: Dec,
    pub hi: Dec,
    pub unit: String,
}

impl RangeSpec {
    pub fn new(lo: Dec, hi: Dec, unit: String) -> Result<RangeSpec, StasisError> {
        if hi < lo {
            return Err(StasisError::RangeDimensionMismatch {
                range: format!("range [{lo}, {hi}] is empty"),
                series: String::new(),
            });
        }
        Ok(RangeSpec { lo, hi, unit })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StasisSegment {
    pub interval: TimeInterval,
    pub sample_count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChangeKind {
    Increase,
    Decrease,
    Gain,
    Loss,
}

impl ChangeKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ChangeKind::Increase => "increase",
            ChangeKind::Decrease => "decrease",
            ChangeKind::Gain => "gain",
            ChangeKind::Loss => "loss",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChangeEvent {
    pub kind: ChangeKind,
    /// Between the two witnessing samples.
    pub at: TimeInterval,
    /// Base-unit magnitude; gain/loss events carry none.
    pub magnitude: Option<Dec>,
}

/// Maximal runs of consecutive present samples whose base-unit values lie
/// in the closed range, filtered to runs of at least `min_samples`.
/// Segments span first to last sample of the run and are returned in
/// order, pairwise disjoint, separated by an out-of-range or absent
/// sample.
pub fn detect_stasis(
    series: &TimeSeries,
    range: &RangeSpec,
    min_samples: usize,
    units: &UnitRegistry,
) -> Result<Vec<StasisSegment>, StasisError> {
    let range_unit = units
        .get(&range.unit)
        .or_else(|| units.resolve(&range.unit).ok())
        .ok_or_else(|| UnitError::UnknownUnit(range.unit.clone()))?;
    let series_dim = series.dimension(units);
    if range_unit.dimension != series_dim {
        return Err(StasisError::RangeDimensionMismatch {
            range: range_unit.dimension.clone(),
            series: series_dim,
        });
    }
    let lo = range_unit.to_base(&range.lo);
    let hi = range_unit.to_base(&range.hi);
    let min_samples = min_samples.max(1);

    let in_range = |idx: usize| -> bool {
        match series.base_value(idx, units) {
            Some(v) => lo <= v && v <= hi,
            None => false,
        }
    };

    let mut segments = Vec::new();
    let mut run_start: Option<usize> = None;
    for i in 0..=series.samples.len() {
        let ok = i < series.samples.len() && in_range(i);
        match (run_start, ok) {
            (None, true) => run_start = Some(i),
            (Some(start), false) => {
                let len = i - start;
                if len >= min_samples {
                    segments.push(StasisSegment {
                        interval: TimeInterval::new(
                            series.samples[start].when,
                            series.samples[i - 1].when,
                        )
                        .expect("instants are increasing"),
                        sample_count: len,
                    });
                }
                run_start = None;
            }
            _ => {}
        }
    }
    Ok(segments)
}

/// Pairwise scan: absent→present is a gain, present→absent a loss, and a
/// base-unit delta beyond `epsilon` an increase or decrease with positive
/// magnitude. Epsilon is interpreted in base units.
pub fn detect_changes(
    series: &TimeSeries,
    epsilon: &Dec,
    units: &UnitRegistry,
) -> Vec<ChangeEvent> {
    let mut events = Vec::new();
    for i in 1..series.samples.len() {
        let at = TimeInterval::new(series.samples[i - 1].when, series.samples[i].when)
            .expect("instants are increasing");
        let prev = series.base_value(i - 1, units);
        let cur = series.base_value(i, units);
        match (prev, cur) {
            (None, Some(_)) => events.push(ChangeEvent {
                kind: ChangeKind::Gain,
                at,
                magnitude: None,
            }),
            (Some(_), None) => events.push(ChangeEvent {
                kind: ChangeKind::Loss,
                at,
                magnitude: None,
            }),
            (Some(a), Some(b)) => {
                let delta = &b - &a;
                if &delta.abs() > epsilon {
                    events.push(ChangeEvent {
                        kind: if delta.is_positive() {
                            ChangeKind::Increase
                        } else {
                            ChangeKind::Decrease
                        },
                        at,
                        magnitude: Some(delta.abs()),
                    });
                }
            }
            (None, None) => {}
        }
    }
    events
}

/// Which representative value the stasis record's token carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepresentativeValue {
    Mean,
    Min,
    Max,
    First,
}

impl RepresentativeValue {
    pub fn parse(s: &str) -> Option<RepresentativeValue> {
        match s {
            "mean" => Some(RepresentativeValue::Mean),
            "min" => Some(RepresentativeValue::Min),
            "max" => Some(RepresentativeValue::Max),
            "first" => Some(RepresentativeValue::First),
            _ => None,
        }
    }
}

impl Default for RepresentativeValue {
    fn default() -> Self {
        RepresentativeValue::Mean
    }
}

/// Samples of the run backing a segment: exactly those whose instants
/// fall inside the segment interval.
fn run_values(segment: &StasisSegment, series: &TimeSeries) -> Vec<Dec> {
    series
        .samples
        .iter()
        .filter(|s| {
            segment.interval.start() <= s.when && s.when <= segment.interval.end()
        })
        .filter_map(|s| s.value.clone())
        .collect()
}

/// Representative value rendered in the series' own unit space.
pub fn representative_value(
    segment: &StasisSegment,
    series: &TimeSeries,
    policy: RepresentativeValue,
) -> Dec {
    let values = run_values(segment, series);
    debug_assert!(!values.is_empty(), "segment produced from this series");
    match policy {
        RepresentativeValue::First => values[0].clone(),
        RepresentativeValue::Min => values.iter().min().cloned().unwrap(),
        RepresentativeValue::Max => values.iter().max().cloned().unwrap(),
        RepresentativeValue::Mean => {
            let sum = values.iter().fold(Dec::zero(), |acc, v| &acc + v);
            &sum / &Dec::from_int(values.len() as i64)
        }
    }
}

/// Deterministic node for the measured dependent entity of a series,
/// shared by every fragment emitted from it.
pub fn quality_individual(series: &TimeSeries, minter: &IdMinter) -> Node {
    minter.mint(
        "quality",
        &format!("{}\u{1f}{}", series.bearer, series.quality_class),
    )
}

/// Context triples shared by stasis and change fragments: the dependent
/// entity is typed, and (when specifically dependent) tied to its bearer.
fn quality_context(
    graph: &mut Graph,
    quality: &Node,
    series: &TimeSeries,
    taxonomy: &Taxonomy,
) -> Result<(), StasisError> {
    graph
        .insert_parts(
            quality.clone(),
            Node::iri(RDF_TYPE),
            Node::iri(series.quality_class.clone()),
        )
        .expect("well-formed");
    if taxonomy.is_subclass_of(&series.quality_class, &ont("SpecificallyDependentContinuant"))? {
        graph
            .insert_parts(
                quality.clone(),
                Node::iri(ont("inheresIn")),
                series.bearer.clone(),
            )
            .expect("well-formed");
    }
    Ok(())
}

/// Expand a segment into a STASIS fragment: the stasis individual, its
/// participant quality, the interval-measurement record with the
/// representative value, and the dated interval.
pub fn emit_stasis_graph(
    segment: &StasisSegment,
    series: &TimeSeries,
    policy: RepresentativeValue,
    minter: &IdMinter,
    taxonomy: &Taxonomy,
) -> Result<Graph, StasisError> {
    let template = builtin_template("STASIS").expect("built-in");
    let quality = quality_individual(series, minter);
    let key = format!(
        "{}\u{1f}{}\u{1f}{}",
        series.bearer,
        series.quality_class,
        segment.interval.start()
    );
    let value = representative_value(segment, series, policy);
    let start = segment.interval.start();
    let binding = Binding::new()
        .bind_individual("quality", quality.clone(), series.quality_class.clone())
        .bind_value("value", value.to_string())
        .bind_value("date_token", start.date_token())
        .bind_value("date_label", start.date_display_label())
        .bind_fresh("stasis", minter.mint("stasis", &key))
        .bind_fresh("measurement", minter.mint("measurement", &key))
        .bind_fresh("interval", minter.mint("interval", &key))
        .bind_fresh("date", minter.mint("date", &start.date_token()));
    let mut fragment = instantiate(template, &binding, minter, taxonomy)?;
    quality_context(&mut fragment.graph, &quality, series, taxonomy)?;
    Ok(fragment.graph)
}

/// The change subclass for an event: its kind crossed with whether the
/// series' dependent entity is specifically or generically dependent.
pub fn change_class_for(
    series: &TimeSeries,
    kind: ChangeKind,
    taxonomy: &Taxonomy,
) -> Result<String, StasisError> {
    let category = if taxonomy.is_subclass_of(
        &series.quality_class,
        &ont("SpecificallyDependentContinuant"),
    )? {
        "SpecificallyDependentContinuant"
    } else if taxonomy.is_subclass_of(
        &series.quality_class,
        &ont("GenericallyDependentContinuant"),
    )? {
        "GenericallyDependentContinuant"
    } else {
        return Err(StasisError::UnknownDependentCategory(
            series.quality_class.clone(),
        ));
    };
    let prefix = match kind {
        ChangeKind::Increase => "IncreaseOf",
        ChangeKind::Decrease => "DecreaseOf",
        ChangeKind::Gain => "GainOf",
        ChangeKind::Loss => "LossOf",
    };
    Ok(ont(&format!("{prefix}{category}")))
}

/// Expand an event into a CHANGE fragment: the bearer participates in a
/// change process of the right subclass, which has the varied, gained,
/// or lost dependent entity as participant. Lost entities stay linked;
/// the graph records history, not current state.
pub fn emit_change_graph(
    event: &ChangeEvent,
    series: &TimeSeries,
    minter: &IdMinter,
    taxonomy: &Taxonomy,
) -> Result<Graph, StasisError> {
    let template = builtin_template("CHANGE").expect("built-in");
    let quality = quality_individual(series, minter);
    let change_class = change_class_for(series, event.kind, taxonomy)?;
    let key = format!(
        "{}\u{1f}{}\u{1f}{}\u{1f}{}",
        series.bearer,
        series.quality_class,
        event.kind.as_str(),
        event.at.start()
    );
    let binding = Binding::new()
        .bind_individual(
            "bearer",
            series.bearer.clone(),
            ont("IndependentContinuant"),
        )
        .bind_individual("dependent", quality.clone(), series.quality_class.clone())
        .bind_class("change_class", change_class)
        .bind_fresh("change", minter.mint("change", &key));
    let mut fragment = instantiate(template, &binding, minter, taxonomy)?;
    quality_context(&mut fragment.graph, &quality, series, taxonomy)?;
    Ok(fragment.graph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::validate;
    use crate::seeds;
    use crate::vocab::unit_iri;

    fn celsius_series(values: &[Option<&str>]) -> TimeSeries {
        let samples = values
            .iter()
            .enumerate()
            .map(|(i, v)| Sample {
                when: TimeInstant::parse(&format!("2024-03-15T{:02}:00:00Z", 6 + i)).unwrap(),
                value: v.map(|s| Dec::parse(s).unwrap()),
                unit: unit_iri("celsius"),
            })
            .collect();
        TimeSeries::new(
            ont("Temperature"),
            Node::iri("http://ex.org/mary"),
            MeasurementKind::Interval,
            samples,
            seeds::units(),
        )
        .unwrap()
    }

    fn normal_range() -> RangeSpec {
        RangeSpec::new(
            Dec::parse("36.0").unwrap(),
            Dec::parse("37.5").unwrap(),
            unit_iri("celsius"),
        )
        .unwrap()
    }

    #[test]
    fn all_in_range_is_one_segment() {
        let series = celsius_series(&[Some("36.8"), Some("36.9"), Some("37.0")]);
        let segments = detect_stasis(&series, &normal_range(), 1, seeds::units()).unwrap();
        assert_eq!(segments.len(), 1);
        assert_eq!(segments[0].sample_count, 3);
        assert_eq!(segments[0].interval.start(), series.samples()[0].when);
        assert_eq!(segments[0].interval.end(), series.samples()[2].when);
    }

    #[test]
    fn all_out_of_range_is_empty() {
        let series = celsius_series(&[Some("39.0"), Some("39.5")]);
        assert!(detect_stasis(&series, &normal_range(), 1, seeds::units())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn spike_splits_two_segments() {
        let series = celsius_series(&[Some("36.8"), Some("39.0"), Some("37.0")]);
        let segments = detect_stasis(&series, &normal_range(), 1, seeds::units()).unwrap();
        assert_eq!(segments.len(), 2);
        assert_eq!(segments[0].sample_count, 1);
        assert_eq!(segments[1].sample_count, 1);
    }

    #[test]
    fn min_samples_filters_short_runs() {
        let series = celsius_series(&[Some("36.8"), Some("39.0"), Some("36.9"), Some("37.0")]);
        let segments = detect_stasis(&series, &normal_range(), 2, seeds::units()).unwrap();
        assert_eq!(segments.len(), 1);
        assert_eq!(segments[0].sample_count, 2);
    }

    #[test]
    fn boundary_values_are_in_range() {
        let series = celsius_series(&[Some("36.0"), Some("37.5")]);
        let segments = detect_stasis(&series, &normal_range(), 1, seeds::units()).unwrap();
        assert_eq!(segments.len(), 1);
        assert_eq!(segments[0].sample_count, 2);
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let series = celsius_series(&[Some("36.8")]);
        let range = RangeSpec::new(
            Dec::parse("1").unwrap(),
            Dec::parse("2").unwrap(),
            unit_iri("meter"),
        )
        .unwrap();
        assert!(matches!(
            detect_stasis(&series, &range, 1, seeds::units()),
            Err(StasisError::RangeDimensionMismatch { .. })
        ));
    }

    #[test]
    fn constant_series_has_no_changes() {
        let series = celsius_series(&[Some("5"), Some("5"), Some("5")]);
        assert!(detect_changes(&series, &Dec::zero(), seeds::units()).is_empty());
    }

    #[test]
    fn present_to_absent_is_a_loss() {
        let series = celsius_series(&[Some("5"), None]);
        let events = detect_changes(&series, &Dec::zero(), seeds::units());
        assert_eq!(events.len(), 1);
        assert_eq!(events[0].kind, ChangeKind::Loss);
        assert_eq!(events[0].magnitude, None);
    }

    #[test]
    fn epsilon_gates_increase_magnitude() {
        let series = celsius_series(&[Some("10"), Some("12")]);
        let events = detect_changes(&series, &Dec::one(), seeds::units());
        assert_eq!(events.len(), 1);
        assert_eq!(events[0].kind, ChangeKind::Increase);
        assert_eq!(events[0].magnitude, Some(Dec::from_int(2)));
        // delta within epsilon emits nothing
        assert!(detect_changes(&series, &Dec::from_int(2), seeds::units()).is_empty());
    }

    #[test]
    fn representative_mean_is_exact() {
        let series = celsius_series(&[Some("36.8"), Some("36.9"), Some("37.0")]);
        let segments = detect_stasis(&series, &normal_range(), 1, seeds::units()).unwrap();
        let value = representative_value(&segments[0], &series, RepresentativeValue::Mean);
        assert_eq!(value, Dec::parse("36.9").unwrap());
    }

    #[test]
    fn stasis_fragment_validates_and_carries_date_tokens() {
        let taxonomy = seeds::taxonomy();
        let minter = IdMinter::new("https://cco-forge.dev/data", "test");
        let series = celsius_series(&[Some("36.8"), Some("36.9"), Some("37.0")]);
        let segments = detect_stasis(&series, &normal_range(), 1, seeds::units()).unwrap();
        let graph = emit_stasis_graph(
            &segments[0],
            &series,
            RepresentativeValue::Mean,
            &minter,
            taxonomy,
        )
        .unwrap();
        let stasis_node = minter.mint(
            "stasis",
            &format!(
                "{}\u{1f}{}\u{1f}{}",
                series.bearer,
                series.quality_class,
                segments[0].interval.start()
            ),
        );
        let report = validate(&graph, builtin_template("STASIS").unwrap(), &stasis_node, taxonomy)
            .unwrap();
        assert!(report.is_conformant(), "{report:?}");
        let date = graph
            .match_triples(None, Some(&Node::iri(RDF_TYPE)), Some(&Node::iri(ont("DateIdentifier"))))
            .pop()
            .expect("date individual");
        let token = graph.object(&date.subject, &ont("isTokenizedBy")).unwrap();
        assert_eq!(token.as_literal().unwrap().lexical(), "2024-03-15");
        let label = graph.object(&date.subject, crate::vocab::RDFS_LABEL).unwrap();
        assert_eq!(label.as_literal().unwrap().lexical(), "3/15/24");
    }

    #[test]
    fn two_segments_mint_distinct_stases() {
        let taxonomy = seeds::taxonomy();
        let minter = IdMinter::new("https://cco-forge.dev/data", "test");
        let series = celsius_series(&[Some("36.8"), Some("39.0"), Some("37.0")]);
        let segments = detect_stasis(&series, &normal_range(), 1, seeds::units()).unwrap();
        assert_eq!(segments.len(), 2);
        let g0 = emit_stasis_graph(&segments[0], &series, RepresentativeValue::Mean, &minter, taxonomy).unwrap();
        let g1 = emit_stasis_graph(&segments[1], &series, RepresentativeValue::Mean, &minter, taxonomy).unwrap();
        let stases = |g: &Graph| {
            g.match_triples(None, Some(&Node::iri(RDF_TYPE)), Some(&Node::iri(ont("Stasis"))))
                .into_iter()
                .map(|t| t.subject)
                .collect::<Vec<_>>()
        };
        assert_ne!(stases(&g0), stases(&g1));
    }

    #[test]
    fn loss_of_disposition_types_as_loss_of_sdc() {
        let taxonomy = seeds::taxonomy();
        let minter = IdMinter::new("https://cco-forge.dev/data", "test");
        let samples = vec![
            Sample {
                when: TimeInstant::parse("2024-01-01T00:00:00Z").unwrap(),
                value: Some(Dec::one()),
                unit: unit_iri("kelvin"),
            },
            Sample {
                when: TimeInstant::parse("2024-01-02T00:00:00Z").unwrap(),
                value: None,
                unit: unit_iri("kelvin"),
            },
        ];
        // a disposition-like dependent entity: liquidity modeled under disposition
        let series = TimeSeries::new(
            ont("Disposition"),
            Node::iri("http://ex.org/h2o-portion"),
            MeasurementKind::Interval,
            samples,
            seeds::units(),
        )
        .unwrap();
        let events = detect_changes(&series, &Dec::zero(), seeds::units());
        assert_eq!(events[0].kind, ChangeKind::Loss);
        let graph = emit_change_graph(&events[0], &series, &minter, taxonomy).unwrap();
        let loss = Node::iri(ont("LossOfSpecificallyDependentContinuant"));
        assert_eq!(
            graph
                .match_triples(None, Some(&Node::iri(RDF_TYPE)), Some(&loss))
                .len(),
            1
        );
    }

    #[test]
    fn gain_of_gdc_for_information_quality() {
        let taxonomy = seeds::taxonomy();
        let series = TimeSeries::new(
            ont("InformationContentEntity"),
            Node::iri("http://ex.org/laptop"),
            MeasurementKind::Ratio,
            vec![
                Sample {
                    when: TimeInstant::parse("2024-01-01T00:00:00Z").unwrap(),
                    value: None,
                    unit: unit_iri("second"),
                },
                Sample {
                    when: TimeInstant::parse("2024-01-02T00:00:00Z").unwrap(),
                    value: Some(Dec::one()),
                    unit: unit_iri("second"),
                },
            ],
            seeds::units(),
        )
        .unwrap();
        assert_eq!(
            change_class_for(&series, ChangeKind::Gain, taxonomy).unwrap(),
            ont("GainOfGenericallyDependentContinuant")
        );
    }

    #[test]
    fn change_fragment_validates() {
        let taxonomy = seeds::taxonomy();
        let minter = IdMinter::new("https://cco-forge.dev/data", "test");
        let series = celsius_series(&[Some("10"), Some("12")]);
        let events = detect_changes(&series, &Dec::zero(), seeds::units());
        let graph = emit_change_graph(&events[0], &series, &minter, taxonomy).unwrap();
        let change = graph
            .match_triples(
                None,
                Some(&Node::iri(RDF_TYPE)),
                Some(&Node::iri(ont("IncreaseOfSpecificallyDependentContinuant"))),
            )
            .pop()
            .unwrap()
            .subject;
        let report = validate(&graph, builtin_template("CHANGE").unwrap(), &change, taxonomy).unwrap();
        assert!(report.is_conformant(), "{report:?}");
    }

    #[test]
    fn unit_conversion_does_not_move_boundaries() {
        // same readings expressed in fahrenheit
        let to_f = |c: &str| {
            let reg = seeds::units();
            let celsius = reg.resolve("celsius").unwrap();
            let fahrenheit = reg.resolve("fahrenheit").unwrap();
            reg.convert(&Dec::parse(c).unwrap(), celsius, fahrenheit)
                .unwrap()
        };
        let samples: Vec<Sample> = [("36.8", 6), ("39.0", 7), ("37.0", 8)]
            .iter()
            .map(|(v, h)| Sample {
                when: TimeInstant::parse(&format!("2024-03-15T{h:02}:00:00Z")).unwrap(),
                value: Some(to_f(v)),
                unit: unit_iri("fahrenheit"),
            })
            .collect();
        let f_series = TimeSeries::new(
            ont("Temperature"),
            Node::iri("http://ex.org/mary"),
            MeasurementKind::Interval,
            samples,
            seeds::units(),
        )
        .unwrap();
        let f_range = RangeSpec::new(to_f("36.0"), to_f("37.5"), unit_iri("fahrenheit")).unwrap();
        let c_series = celsius_series(&[Some("36.8"), Some("39.0"), Some("37.0")]);
        let from_f = detect_stasis(&f_series, &f_range, 1, seeds::units()).unwrap();
        let from_c = detect_stasis(&c_series, &normal_range(), 1, seeds::units()).unwrap();
        assert_eq!(from_f, from_c);
        let events_f = detect_changes(&f_series, &Dec::zero(), seeds::units());
        let events_c = detect_changes(&c_series, &Dec::zero(), seeds::units());
        let kinds = |ev: &[ChangeEvent]| ev.iter().map(|e| e.kind).collect::<Vec<_>>();
        assert_eq!(kinds(&events_f), kinds(&events_c));
    }
}
