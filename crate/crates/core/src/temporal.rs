//! Instants, gapless intervals, and discontinuous multi-granularity
//! intervals, with the containment operators that link observations made
//! at different time granularities. All interval semantics are closed:
//! boundary instants belong to the intervals they bound.

use std::cmp::Ordering;
use std::fmt;

use chrono::{DateTime, FixedOffset, NaiveDate, NaiveDateTime, Utc};
use thiserror::Error;

use crate::rdf::{Graph, Node};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TemporalError {
    #[error("unparseable timestamp '{0}' (expected ISO 8601)")]
    BadTimestamp(String),
    #[error("interval end {end} precedes start {start}")]
    EndBeforeStart { start: String, end: String },
    #[error("multi-interval segments must be sorted and pairwise disjoint (segment {0} overlaps its predecessor)")]
    OverlappingSegments(usize),
}

/// A UTC timestamp at second precision. Inputs carrying a zone offset are
/// normalized to UTC at parse; the original offset is retained as an
/// annotation and ignored by comparisons.
#[derive(Debug, Clone, Copy)]
pub struct TimeInstant {
    utc: DateTime<Utc>,
    source_offset_minutes: Option<i32>,
}

impl TimeInstant {
    pub fn from_utc(utc: DateTime<Utc>) -> TimeInstant {
        TimeInstant {
            utc: truncate_to_second(utc),
            source_offset_minutes: None,
        }
    }

    /// Accepts RFC 3339 with zone or `Z`, a naive datetime (taken as
    /// UTC), or a bare date (midnight UTC).
    pub fn parse(s: &str) -> Result<TimeInstant, TemporalError> {
        let s = s.trim();
        if let Ok(dt) = DateTime::<FixedOffset>::parse_from_rfc3339(s) {
            return Ok(TimeInstant {
                utc: truncate_to_second(dt.with_timezone(&Utc)),
                source_offset_minutes: Some(dt.offset().local_minus_utc() / 60),
            });
        }
        for fmt in ["%Y-%m-%dT%H:%M:%S", "%Y-%m-%d %H:%M:%S", "%Y-%m-%dT%H:%M"] {
            if let Ok(naive) = NaiveDateTime::parse_from_str(s, fmt) {
                return Ok(TimeInstant {
                    utc: naive.and_utc(),
                    source_offset_minutes: None,
                });
            }
        }
        if let Ok(date) = NaiveDate::parse_from_str(s, "%Y-%m-%d") {
            return Ok(TimeInstant {
                utc: date.and_hms_opt(0, 0, 0).unwrap().and_utc(),
                source_offset_minutes: None,
            });
        }
        Err(TemporalError::BadTimestamp(s.to_string()))
    }

    pub fn utc(&self) -> DateTime<Utc> {
        self.utc
    }

    pub fn source_offset_minutes(&self) -> Option<i32> {
        self.source_offset_minutes
    }

    /// Calendar date of the UTC instant, `YYYY-MM-DD`.
    pub fn date_token(&self) -> String {
        self.utc.format("%Y-%m-%d").to_string()
    }

    /// Short display form `M/D/YY` without leading zeros.
    pub fn date_display_label(&self) -> String {
        use chrono::Datelike;
        format!(
            "{}/{}/{:02}",
            self.utc.month(),
            self.utc.day(),
            self.utc.year() % 100
        )
    }
}

fn truncate_to_second(dt: DateTime<Utc>) -> DateTime<Utc> {
    DateTime::<Utc>::from_timestamp(dt.timestamp(), 0).expect("valid timestamp")
}

impl PartialEq for TimeInstant {
    fn eq(&self, other: &Self) -> bool {
        self.utc == other.utc
    }
}

impl Eq for TimeInstant {}

impl PartialOrd for TimeInstant {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TimeInstant {
    fn cmp(&self, other: &Self) -> Ordering {
        self.utc.cmp(&other.utc)
    }
}

impl fmt::Display for TimeInstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.utc.format("%Y-%m-%dT%H:%M:%SZ"))
    }
}

/// A gapless closed interval `[start, end]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TimeInterval {
    start: TimeInstant,
    end: TimeInstant,
}

impl TimeInterval {
    pub fn new(start: TimeInstant, end: TimeInstant) -> Result<TimeInterval, TemporalError> {
        if end < start {
            return Err(TemporalError::EndBeforeStart {
                start: start.to_string(),
                end: end.to_string(),
            });
        }
        Ok(TimeInterval { start, end })
    }

    pub fn parse(start: &str, end: &str) -> Result<TimeInterval, TemporalError> {
        TimeInterval::new(TimeInstant::parse(start)?, TimeInstant::parse(end)?)
    }

    pub fn start(&self) -> TimeInstant {
        self.start
    }

    pub fn end(&self) -> TimeInstant {
        self.end
    }

    pub fn overlaps(&self, other: &TimeInterval) -> bool {
        self.start <= other.end && other.start <= self.end
    }
}

impl fmt::Display for TimeInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.start, self.end)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Granularity {
    Second,
    Day,
    Month,
}

impl Granularity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Granularity::Second => "second",
            Granularity::Day => "day",
            Granularity::Month => "month",
        }
    }
}

/// An ordered sequence of pairwise disjoint intervals; gaps between
/// segments are allowed, which is the whole point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiInterval {
    granularity: Granularity,
    segments: Vec<TimeInterval>,
}

impl MultiInterval {
    pub fn new(
        granularity: Granularity,
        segments: Vec<TimeInterval>,
    ) -> Result<MultiInterval, TemporalError> {
        for (i, pair) in segments.windows(2).enumerate() {
            if pair[1].start() <= pair[0].end() {
                return Err(TemporalError::OverlappingSegments(i + 1));
            }
        }
        Ok(MultiInterval {
            granularity,
            segments,
        })
    }

    pub fn granularity(&self) -> Granularity {
        self.granularity
    }

    pub fn segments(&self) -> &[TimeInterval] {
        &self.segments
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TemporalAnchor {
    Instant(TimeInstant),
    Interval(TimeInterval),
    Multi(MultiInterval),
}

/// `v.start <= i <= v.end`.
pub fn instant_inside(i: &TimeInstant, v: &TimeInterval) -> bool {
    v.start() <= *i && *i <= v.end()
}

/// Containment with equality allowed: `b.start <= a.start` and
/// `a.end <= b.end`.
pub fn interval_during(a: &TimeInterval, b: &TimeInterval) -> bool {
    b.start() <= a.start() && a.end() <= b.end()
}

/// True iff some segment contains the anchor: instants via
/// [`instant_inside`], intervals via [`interval_during`]. A multi-interval
/// anchor counts as contained when every one of its segments is.
pub fn multi_contains(m: &MultiInterval, anchor: &TemporalAnchor) -> bool {
    match anchor {
        TemporalAnchor::Instant(i) => m.segments().iter().any(|seg| instant_inside(i, seg)),
        TemporalAnchor::Interval(v) => m.segments().iter().any(|seg| interval_during(v, seg)),
        TemporalAnchor::Multi(inner) => inner
            .segments()
            .iter()
            .all(|v| m.segments().iter().any(|seg| interval_during(v, seg))),
    }
}

/// A claim that a process happened at some place over some temporal
/// anchor, e.g. a sighting at an instant or over an afternoon interval.
#[derive(Debug, Clone)]
pub struct AnchoredAssertion {
    pub process: Node,
    pub temporal: TemporalAnchor,
    pub place: Node,
}

impl AnchoredAssertion {
    /// Invariant check for curated data: the place must be typed under
    /// `site` in the data graph.
    pub fn place_typed_under_site(
        &self,
        data: &Graph,
        taxonomy: &crate::registry::Taxonomy,
    ) -> bool {
        let site = crate::vocab::ont("Site");
        data.objects(&self.place, crate::vocab::RDF_TYPE)
            .iter()
            .filter_map(|n| n.as_iri())
            .any(|class| taxonomy.is_subclass_of(class, &site).unwrap_or(false))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coreference {
    Compatible,
    Incompatible,
    Unknown,
}

impl Coreference {
    pub fn as_str(&self) -> &'static str {
        match self {
            Coreference::Compatible => "compatible",
            Coreference::Incompatible => "incompatible",
            Coreference::Unknown => "unknown",
        }
    }
}

fn anchor_segments(anchor: &TemporalAnchor) -> Vec<TimeInterval> {
    match anchor {
        TemporalAnchor::Instant(i) => vec![TimeInterval { start: *i, end: *i }],
        TemporalAnchor::Interval(v) => vec![*v],
        TemporalAnchor::Multi(m) => m.segments().to_vec(),
    }
}

/// Containment-style overlap between anchors: instant inside interval,
/// interval containment in either direction, or multi-interval
/// containment in either direction.
fn anchors_overlap(a: &TemporalAnchor, b: &TemporalAnchor) -> bool {
    match (a, b) {
        (TemporalAnchor::Instant(x), TemporalAnchor::Instant(y)) => x == y,
        (TemporalAnchor::Instant(i), TemporalAnchor::Interval(v))
        | (TemporalAnchor::Interval(v), TemporalAnchor::Instant(i)) => instant_inside(i, v),
        (TemporalAnchor::Interval(x), TemporalAnchor::Interval(y)) => {
            interval_during(x, y) || interval_during(y, x)
        }
        (TemporalAnchor::Multi(m), other) | (other, TemporalAnchor::Multi(m)) => {
            multi_contains(m, other)
                || match other {
                    // the non-multi side may instead cover the whole multi
                    TemporalAnchor::Interval(v) => {
                        m.segments().iter().all(|seg| interval_during(seg, v))
                    }
                    _ => false,
                }
        }
    }
}

fn anchors_disjoint(a: &TemporalAnchor, b: &TemporalAnchor) -> bool {
    let left = anchor_segments(a);
    let right = anchor_segments(b);
    !left.iter().any(|x| right.iter().any(|y| x.overlaps(y)))
}

fn part_of_related(data: &Graph, a: &Node, b: &Node) -> bool {
    reachable_via_part_of(data, a, b) || reachable_via_part_of(data, b, a)
}

fn reachable_via_part_of(data: &Graph, from: &Node, to: &Node) -> bool {
    if from == to {
        return true;
    }
    let part_of = crate::vocab::ont("partOf");
    let mut stack = vec![from.clone()];
    let mut seen = std::collections::BTreeSet::new();
    while let Some(cur) = stack.pop() {
        if !seen.insert(cur.clone()) {
            continue;
        }
        for parent in data.objects(&cur, &part_of) {
            if parent == *to {
                return true;
            }
            stack.push(parent);
        }
    }
    false
}

fn place_fully_asserted(data: &Graph, place: &Node) -> bool {
    let part_of = Node::iri(crate::vocab::ont("partOf"));
    !data.match_triples(Some(place), Some(&part_of), None).is_empty()
        || !data.match_triples(None, Some(&part_of), Some(place)).is_empty()
}

/// Could the two assertions describe the same event? Compatible when the
/// temporal anchors overlap (containment sense) and the places are linked
/// by the reflexive-transitive part-of closure in either direction;
/// incompatible when the anchors are disjoint, or when both places carry
/// part-of assertions yet no path connects them; unknown otherwise
/// (open world).
pub fn coreference_compatible(
    x: &AnchoredAssertion,
    y: &AnchoredAssertion,
    data: &Graph,
) -> Coreference {
    if anchors_disjoint(&x.temporal, &y.temporal) {
        return Coreference::Incompatible;
    }
    let related = part_of_related(data, &x.place, &y.place);
    if !related && place_fully_asserted(data, &x.place) && place_fully_asserted(data, &y.place) {
        return Coreference::Incompatible;
    }
    if anchors_overlap(&x.temporal, &y.temporal) && related {
        return Coreference::Compatible;
    }
    Coreference::Unknown
}
