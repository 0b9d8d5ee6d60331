//! Evaluation reports and their JSON, CSV and table renderings.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::metrics::{Metric, Orientation};

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct MetricValue {
    pub name: String,
    /// `None` when the metric's precondition failed; see the report flags.
    pub value: Option<f64>,
    pub orientation: Orientation,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Counts {
    /// Records in the aligned universe.
    pub n: u64,
    /// |R|
    pub clusters_pred: u64,
    /// |S|
    pub clusters_gold: u64,
    pub intra_pairs_pred: u64,
    pub intra_pairs_gold: u64,
    /// Diagnostic only; no metric uses inter-cluster pairs.
    pub inter_pairs_pred: u64,
    pub shared_pairs: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FlagKind {
    /// A zero-denominator convention decided the value.
    Degenerate,
    /// The metric could not be computed.
    Unavailable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Flag {
    pub metric: String,
    pub kind: FlagKind,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ReportConfig {
    pub universe: String,
    pub beta: f64,
    pub gmd_split: String,
    pub gmd_merge: String,
    pub entropy_unit: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct MetricReport {
    pub schema_version: u32,
    pub metrics: Vec<MetricValue>,
    pub counts: Counts,
    pub flags: Vec<Flag>,
    pub config: ReportConfig,
}

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("malformed report: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported report schema version {0}")]
    SchemaVersion(u32),
    #[error("metric `{0}` appears more than once")]
    DuplicateMetric(String),
}

impl MetricReport {
    pub fn value(&self, name: &str) -> Option<f64> {
        self.metrics
            .iter()
            .find(|m| m.name == name)
            .and_then(|m| m.value)
    }

    pub fn get(&self, metric: Metric) -> Option<f64> {
        self.value(metric.name())
    }

    /// True when some requested metric could not be computed.
    pub fn has_unavailable(&self) -> bool {
        self.metrics.iter().any(|m| m.value.is_none())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, ReportError> {
        let report: MetricReport = serde_json::from_str(text)?;
        if report.schema_version != SCHEMA_VERSION {
            return Err(ReportError::SchemaVersion(report.schema_version));
        }
        let mut seen = HashSet::new();
        for m in &report.metrics {
            if !seen.insert(m.name.as_str()) {
                return Err(ReportError::DuplicateMetric(m.name.clone()));
            }
        }
        Ok(report)
    }

    /// `section,name,value` rows: metrics, then counts, then configuration.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("section,name,value\n");
        for m in &self.metrics {
            let v = m.value.map(|v| v.to_string()).unwrap_or_default();
            let _ = writeln!(out, "metric,{},{}", m.name, v);
        }
        for (name, v) in self.count_rows() {
            let _ = writeln!(out, "count,{name},{v}");
        }
        for (name, v) in self.config_rows() {
            let _ = writeln!(out, "config,{name},{}", csv_field(&v));
        }
        out
    }

    pub fn to_table(&self) -> String {
        let width = self
            .metrics
            .iter()
            .map(|m| m.name.len())
            .chain(self.count_rows().iter().map(|(n, _)| n.len()))
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        for m in &self.metrics {
            let v = match m.value {
                Some(v) => format!("{v:.6}"),
                None => "n/a".to_owned(),
            };
            let arrow = match m.orientation {
                Orientation::Higher => "↑",
                Orientation::Lower => "↓",
                Orientation::None => " ",
            };
            let _ = writeln!(out, "{:<width$}  {arrow} {v:>12}", m.name);
        }
        out.push('\n');
        for (name, v) in self.count_rows() {
            let _ = writeln!(out, "{name:<width$}    {v:>12}");
        }
        if !self.flags.is_empty() {
            out.push('\n');
            for f in &self.flags {
                let kind = match f.kind {
                    FlagKind::Degenerate => "degenerate",
                    FlagKind::Unavailable => "unavailable",
                };
                let _ = writeln!(out, "{kind}: {}: {}", f.metric, f.detail);
            }
        }
        let c = &self.config;
        let _ = writeln!(
            out,
            "\nuniverse={} beta={} gmd split={} merge={} entropy unit={}",
            c.universe, c.beta, c.gmd_split, c.gmd_merge, c.entropy_unit
        );
        out
    }

    fn count_rows(&self) -> Vec<(&'static str, u64)> {
        let c = &self.counts;
        vec![
            ("n", c.n),
            ("clustersPred", c.clusters_pred),
            ("clustersGold", c.clusters_gold),
            ("intraPairsPred", c.intra_pairs_pred),
            ("intraPairsGold", c.intra_pairs_gold),
            ("interPairsPred", c.inter_pairs_pred),
            ("sharedPairs", c.shared_pairs),
        ]
    }

    fn config_rows(&self) -> Vec<(&'static str, String)> {
        let c = &self.config;
        vec![
            ("universe", c.universe.clone()),
            ("beta", c.beta.to_string()),
            ("gmdSplit", c.gmd_split.clone()),
            ("gmdMerge", c.gmd_merge.clone()),
            ("entropyUnit", c.entropy_unit.clone()),
        ]
    }
}

fn csv_field(v: &str) -> String {
    if v.contains([',', '"', '\n']) {
        format!("\"{}\"", v.replace('"', "\"\""))
    } else {
        v.to_owned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> MetricReport {
        MetricReport {
            schema_version: SCHEMA_VERSION,
            metrics: vec![
                MetricValue {
                    name: "pairwiseF1".into(),
                    value: Some(0.1 + 0.2),
                    orientation: Orientation::Higher,
                },
                MetricValue {
                    name: "ccF1".into(),
                    value: None,
                    orientation: Orientation::Higher,
                },
            ],
            counts: Counts {
                n: 5,
                ..Counts::default()
            },
            flags: vec![Flag {
                metric: "ccF1".into(),
                kind: FlagKind::Unavailable,
                detail: "empty".into(),
            }],
            config: ReportConfig {
                universe: "strict".into(),
                beta: 1.0,
                gmd_split: "affine:3,0.5".into(),
                gmd_merge: "product:1".into(),
                entropy_unit: "nats".into(),
            },
        }
    }

    #[test]
    fn json_round_trip_is_lossless() {
        let r = sample();
        let text = r.to_json();
        let back = MetricReport::from_json(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json(), text);
        assert!(text.contains("\"schemaVersion\": 1"));
    }

    #[test]
    fn rejects_duplicates_and_other_versions() {
        let mut r = sample();
        r.metrics.push(r.metrics[0].clone());
        assert!(matches!(
            MetricReport::from_json(&r.to_json()),
            Err(ReportError::DuplicateMetric(_))
        ));
        let mut r = sample();
        r.schema_version = 99;
        assert!(matches!(
            MetricReport::from_json(&r.to_json()),
            Err(ReportError::SchemaVersion(99))
        ));
    }

    #[test]
    fn csv_and_table() {
        let r = sample();
        let csv = r.to_csv();
        assert!(csv.starts_with("section,name,value\nmetric,pairwiseF1,0.30000000000000004\nmetric,ccF1,\n"));
        assert!(csv.contains("config,gmdSplit,\"affine:3,0.5\"\n"));
        let table = r.to_table();
        assert!(table.contains("n/a"));
        assert!(table.contains("unavailable: ccF1: empty"));
        assert!(r.has_unavailable());
        assert_eq!(r.value("pairwiseF1"), Some(0.1 + 0.2));
    }
}
