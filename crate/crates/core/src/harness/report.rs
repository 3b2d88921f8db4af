use std::fmt;
use std::io::Write;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::Family;
use crate::error::{Error, Result};
use crate::group::Group;

pub const CSV_COLUMNS: [&str; 11] = [
    "kind",
    "p",
    "delta",
    "group",
    "theorem",
    "trials",
    "violations",
    "certified_bound",
    "max_actual",
    "min_slack",
    "status",
];

/// A real parameter that remembers the text it was parsed from, so reports
/// echo user input exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct Decimal {
    text: String,
    value: f64,
}

impl Decimal {
    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }
}

impl From<f64> for Decimal {
    fn from(value: f64) -> Self {
        Decimal { text: value.to_string(), value }
    }
}

impl std::str::FromStr for Decimal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        let value: f64 = text
            .parse()
            .map_err(|_| Error::Parse(format!("not a decimal number: {s:?}")))?;
        if !value.is_finite() {
            return Err(Error::Parse(format!("not a finite number: {s:?}")));
        }
        Ok(Decimal { text: text.to_string(), value })
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl Serialize for Decimal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.text)
    }
}

impl<'de> Deserialize<'de> for Decimal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    /// Every trial stayed within the certified bound.
    Ok,
    /// At least one trial exceeded the certified bound.
    Violated,
    /// Hypotheses cannot hold for this cell; nothing was sampled.
    Skipped,
    /// The sampler ran out of attempts.
    SamplingExhausted,
}

impl fmt::Display for RowStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RowStatus::Ok => "ok",
            RowStatus::Violated => "violated",
            RowStatus::Skipped => "skipped",
            RowStatus::SamplingExhausted => "sampling_exhausted",
        })
    }
}

/// One cell of a certification table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub kind: Family,
    pub p: Decimal,
    pub delta: Decimal,
    pub group: Group,
    pub theorem: String,
    pub trials: usize,
    pub violations: usize,
    pub certified_bound: Option<f64>,
    pub max_actual: Option<f64>,
    pub min_slack: Option<f64>,
    pub status: RowStatus,
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Writes `rows` as CSV with the fixed column set. Floats use the shortest
/// round-trip representation, so output is byte-stable.
pub fn write_csv<W: Write>(rows: &[ReportRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Internal(format!("csv output failed: {e}"));
    w.write_record(CSV_COLUMNS).map_err(io)?;
    for r in rows {
        w.write_record([
            r.kind.to_string(),
            r.p.to_string(),
            r.delta.to_string(),
            r.group.to_string(),
            r.theorem.clone(),
            r.trials.to_string(),
            r.violations.to_string(),
            opt(r.certified_bound),
            opt(r.max_actual),
            opt(r.min_slack),
            r.status.to_string(),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| Error::Internal(format!("csv output failed: {e}")))
}
