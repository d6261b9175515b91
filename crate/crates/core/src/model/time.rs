use std::fmt;
use std::str::FromStr;

use chrono::{DateTime, NaiveDateTime, TimeZone, Utc};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An instant on the UTC timeline with millisecond precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TimePoint(i64);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid timestamp {input:?}: {reason}")]
pub struct TimeParseError {
    pub input: String,
    pub reason: String,
}

impl TimePoint {
    pub const fn from_millis(millis: i64) -> Self {
        TimePoint(millis)
    }

    pub const fn as_millis(self) -> i64 {
        self.0
    }

    /// Parses an ISO-8601 instant. Offset-less values are read as UTC and
    /// sub-millisecond digits are truncated.
    pub fn parse(input: &str) -> Result<Self, TimeParseError> {
        let s = input.trim();
        let err = |reason: &str| TimeParseError {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        if s.is_empty() {
            return Err(err("empty"));
        }
        if let Ok(dt) = DateTime::parse_from_rfc3339(s) {
            return Ok(TimePoint(dt.timestamp_millis()));
        }
        // RFC 3339 also allows a space separator in place of 'T'.
        if let Some(fixed) = s.get(10..11).filter(|c| *c == " ").map(|_| {
            let mut owned = s.to_string();
            owned.replace_range(10..11, "T");
            owned
        }) {
            if let Ok(dt) = DateTime::parse_from_rfc3339(&fixed) {
                return Ok(TimePoint(dt.timestamp_millis()));
            }
        }
        for fmt in ["%Y-%m-%dT%H:%M:%S%.f", "%Y-%m-%d %H:%M:%S%.f", "%Y-%m-%dT%H:%M"] {
            if let Ok(naive) = NaiveDateTime::parse_from_str(s, fmt) {
                return Ok(TimePoint(Utc.from_utc_datetime(&naive).timestamp_millis()));
            }
        }
        if let Ok(date) = chrono::NaiveDate::parse_from_str(s, "%Y-%m-%d") {
            let naive = date.and_hms_opt(0, 0, 0).expect("midnight is valid");
            return Ok(TimePoint(Utc.from_utc_datetime(&naive).timestamp_millis()));
        }
        Err(err("not an ISO-8601 instant"))
    }

    fn to_datetime(self) -> DateTime<Utc> {
        Utc.timestamp_millis_opt(self.0)
            .single()
            .expect("millisecond timestamps produced by parse are in range")
    }
}

impl fmt::Display for TimePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_datetime().format("%Y-%m-%dT%H:%M:%S%.3fZ"))
    }
}

impl FromStr for TimePoint {
    type Err = TimeParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TimePoint::parse(s)
    }
}

impl Serialize for TimePoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TimePoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        TimePoint::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// A span of time. A missing `end` means the interval is still open.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TimeInterval {
    pub begin: TimePoint,
    pub end: Option<TimePoint>,
}

impl TimeInterval {
    pub fn closed(begin: TimePoint, end: TimePoint) -> Self {
        TimeInterval {
            begin,
            end: Some(end),
        }
    }

    pub fn open(begin: TimePoint) -> Self {
        TimeInterval { begin, end: None }
    }

    pub fn point(at: TimePoint) -> Self {
        TimeInterval::closed(at, at)
    }

    pub fn is_well_formed(&self) -> bool {
        self.end.is_none_or(|end| self.begin <= end)
    }

    pub fn is_point(&self) -> bool {
        self.end == Some(self.begin)
    }

    /// Half-open membership: `begin <= at < end`.
    pub fn contains_half_open(&self, at: TimePoint) -> bool {
        self.begin <= at && self.end.is_none_or(|end| at < end)
    }

    /// Whether two half-open intervals share at least one instant. Empty
    /// intervals (`begin == end`) share nothing.
    pub fn overlaps_half_open(&self, other: &TimeInterval) -> bool {
        if self.is_point() || other.is_point() {
            return false;
        }
        let a_before_b_ends = other.end.is_none_or(|e| self.begin < e);
        let b_before_a_ends = self.end.is_none_or(|e| other.begin < e);
        a_before_b_ends && b_before_a_ends
    }
}

impl fmt::Display for TimeInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.end {
            Some(end) => write!(f, "[{}, {}]", self.begin, end),
            None => write!(f, "[{}, ...)", self.begin),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_common_forms() {
        let z = TimePoint::parse("2024-01-10T09:00:00Z").unwrap();
        assert_eq!(TimePoint::parse("2024-01-10T09:00:00").unwrap(), z);
        assert_eq!(TimePoint::parse("2024-01-10 09:00:00").unwrap(), z);
        assert_eq!(TimePoint::parse("2024-01-10T10:00:00+01:00").unwrap(), z);
        assert_eq!(TimePoint::parse("2024-01-10T09:00:00.000Z").unwrap(), z);
        assert_eq!(
            TimePoint::parse("2024-01-10T09:00:00.0019Z").unwrap().as_millis(),
            z.as_millis() + 1
        );
        assert!(TimePoint::parse("yesterday").is_err());
        assert!(TimePoint::parse("").is_err());
    }

    #[test]
    fn display_is_fixed_width_utc() {
        let t = TimePoint::parse("2024-01-10T09:00:00.5+00:00").unwrap();
        assert_eq!(t.to_string(), "2024-01-10T09:00:00.500Z");
        assert_eq!(TimePoint::parse(&t.to_string()).unwrap(), t);
        assert_eq!(TimePoint::from_millis(0).to_string(), "1970-01-01T00:00:00.000Z");
    }

    #[test]
    fn half_open_membership() {
        let iv = TimeInterval::closed(TimePoint(10), TimePoint(20));
        assert!(iv.contains_half_open(TimePoint(10)));
        assert!(iv.contains_half_open(TimePoint(19)));
        assert!(!iv.contains_half_open(TimePoint(20)));
        assert!(TimeInterval::open(TimePoint(10)).contains_half_open(TimePoint(i64::MAX)));
    }

    #[test]
    fn adjacent_half_open_intervals_do_not_overlap() {
        let a = TimeInterval::closed(TimePoint(0), TimePoint(5));
        let b = TimeInterval::open(TimePoint(5));
        assert!(!a.overlaps_half_open(&b));
        assert!(TimeInterval::open(TimePoint(4)).overlaps_half_open(&a));
        assert!(!TimeInterval::point(TimePoint(3)).overlaps_half_open(&a));
    }
}
