//! Verification records and their JSON-lines form.

use std::fmt;

use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Inconclusive,
    Fail,
}

impl Status {
    /// FAIL dominates INCONCLUSIVE, which dominates PASS.
    pub fn merge(self, other: Status) -> Status {
        self.max(other)
    }

    /// Three-way reading of a claim `diff > 0` at resolution `theta`.
    pub fn strict(diff: f64, theta: f64) -> Status {
        if diff > theta {
            Status::Pass
        } else if diff < -theta {
            Status::Fail
        } else {
            Status::Inconclusive
        }
    }

    /// Reading of a claim `diff >= 0` at resolution `theta`.
    pub fn non_strict(diff: f64, theta: f64) -> Status {
        if diff >= -theta {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    /// Process exit code for a run whose overall status is `self`.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive => 2,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Inconclusive => "INCONCLUSIVE",
            Status::Fail => "FAIL",
        })
    }
}

/// 17 significant digits, enough to round-trip any `f64`; `null` when not finite.
pub fn format_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

pub fn json_f64(x: f64) -> Box<RawValue> {
    RawValue::from_string(format_f64(x)).expect("formatted float is valid JSON")
}

pub fn ser_f64<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    json_f64(*x).serialize(s)
}

pub fn ser_opt_f64<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(x) => json_f64(*x).serialize(s),
        None => s.serialize_none(),
    }
}

pub fn ser_vec_f64<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|&x| json_f64(x)))
}

/// One parameter point of a sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub lemma: String,
    pub params: serde_json::Value,
    pub status: Status,
    pub graph6: Option<String>,
    pub gamma: Option<usize>,
    #[serde(serialize_with = "ser_opt_f64")]
    pub q_min: Option<f64>,
}

impl ReportRecord {
    pub fn new(lemma: &str, params: serde_json::Value, status: Status) -> ReportRecord {
        ReportRecord {
            lemma: lemma.to_string(),
            params,
            status,
            graph6: None,
            gamma: None,
            q_min: None,
        }
    }

    pub fn with_graph(mut self, graph6: String, gamma: Option<usize>, q_min: Option<f64>) -> ReportRecord {
        self.graph6 = Some(graph6);
        self.gamma = gamma;
        self.q_min = q_min;
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct VerificationReport {
    pub id: String,
    /// Human-readable description of what was covered, e.g. `"n=5..11"`.
    pub coverage: String,
    pub records: Vec<ReportRecord>,
}

impl VerificationReport {
    pub fn new(id: &str, coverage: impl Into<String>) -> VerificationReport {
        VerificationReport {
            id: id.to_string(),
            coverage: coverage.into(),
            records: Vec::new(),
        }
    }

    pub fn push(&mut self, r: ReportRecord) {
        self.records.push(r);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.records.extend(other.records);
    }

    pub fn status(&self) -> Status {
        self.records.iter().fold(Status::Pass, |s, r| s.merge(r.status))
    }

    pub fn count(&self, status: Status) -> usize {
        self.records.iter().filter(|r| r.status == status).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportRecord> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("record serializes"));
            out.push('\n');
        }
        out
    }

    pub fn summary(&self) -> String {
        format!(
            "{} [{}]: {} ({} pass, {} fail, {} inconclusive)",
            self.id,
            self.coverage,
            self.status(),
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Inconclusive)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn floats_round_trip() {
        for x in [0.0, 1.0 / 3.0, 0.381_966_011_250_105_1, 1e-300, -2.5e17, f64::MIN_POSITIVE] {
            let s = format_f64(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
            let back: f64 = serde_json::from_str(&s).unwrap();
            assert_eq!(back, x);
        }
        assert_eq!(format_f64(f64::NAN), "null");
    }

    #[test]
    fn record_shape() {
        let r = ReportRecord::new("X", json!({"n": 5}), Status::Pass).with_graph("Bg".into(), Some(1), Some(0.5));
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(
            text,
            r#"{"lemma":"X","params":{"n":5},"status":"PASS","graph6":"Bg","gamma":1,"q_min":5.0000000000000000e-1}"#
        );
        let back: ReportRecord = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn status_merging() {
        let mut rep = VerificationReport::new("T", "n=1");
        assert_eq!(rep.status(), Status::Pass);
        rep.push(ReportRecord::new("T", json!({}), Status::Inconclusive));
        assert_eq!(rep.status(), Status::Inconclusive);
        rep.push(ReportRecord::new("T", json!({}), Status::Fail));
        assert_eq!(rep.status(), Status::Fail);
        assert_eq!(rep.status().exit_code(), 1);
        assert_eq!(Status::strict(1e-9, 1e-7), Status::Inconclusive);
        assert_eq!(Status::strict(-1e-6, 1e-7), Status::Fail);
    }
}
