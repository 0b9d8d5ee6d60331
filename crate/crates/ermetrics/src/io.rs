//! Clustering file formats.
//!
//! TSV: one `record_id<TAB>cluster_id` row per record; blank lines and lines
//! starting with `#` are skipped.
//!
//! JSON: `{"clusters": {"<label>": ["id", ...], ...}}`.

use std::collections::HashSet;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use ermetrics_core::{Clustering, ClusteringBuilder, RecordId};
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::HarnessError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Tsv,
    Json,
}

impl Format {
    /// `.json` files are JSON; everything else is TSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => Self::Json,
            _ => Self::Tsv,
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tsv" => Ok(Self::Tsv),
            "json" => Ok(Self::Json),
            other => Err(format!("unknown clustering format `{other}` (expected tsv or json)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Tsv => "tsv",
            Self::Json => "json",
        })
    }
}

#[derive(Serialize, Deserialize)]
struct JsonClusters {
    clusters: IndexMap<String, Vec<String>>,
}

/// Reads a clustering; `format` defaults to the one implied by the extension.
pub fn parse_clustering_file(path: &Path, format: Option<Format>) -> Result<Clustering, HarnessError> {
    let text = fs::read_to_string(path).map_err(|source| HarnessError::Io {
        path: path.to_owned(),
        source,
    })?;
    let origin = path.display().to_string();
    match format.unwrap_or_else(|| Format::from_path(path)) {
        Format::Tsv => parse_tsv(&text, &origin),
        Format::Json => parse_json(&text, &origin),
    }
}

pub fn parse_tsv(text: &str, origin: &str) -> Result<Clustering, HarnessError> {
    let mut builder = ClusteringBuilder::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let row = raw.strip_suffix('\r').unwrap_or(raw);
        if row.trim().is_empty() || row.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| HarnessError::Parse {
            origin: origin.to_owned(),
            line,
            column: None,
            message,
        };
        let mut fields = row.split('\t');
        let (Some(record), Some(label), None) = (fields.next(), fields.next(), fields.next())
        else {
            return Err(parse_err(format!(
                "expected `record_id<TAB>cluster_id`, got {:?}",
                row
            )));
        };
        let record = RecordId::new(record).map_err(|_| parse_err("empty record id".into()))?;
        let label = label.trim();
        if label.is_empty() {
            return Err(parse_err("empty cluster id".into()));
        }
        builder
            .add(record, label)
            .map_err(|source| HarnessError::Assignment {
                origin: origin.to_owned(),
                line,
                source,
            })?;
    }
    Ok(builder.finish())
}

pub fn parse_json(text: &str, origin: &str) -> Result<Clustering, HarnessError> {
    let doc: JsonClusters = serde_json::from_str(text).map_err(|e| HarnessError::Parse {
        origin: origin.to_owned(),
        line: e.line(),
        column: Some(e.column()),
        message: e.to_string(),
    })?;
    let mut builder = ClusteringBuilder::new();
    for (label, members) in doc.clusters {
        for token in members {
            let record = RecordId::new(&token).map_err(|_| HarnessError::Parse {
                origin: origin.to_owned(),
                line: 0,
                column: None,
                message: format!("empty record id in cluster `{label}`"),
            })?;
            builder.add(record, &label)?;
        }
    }
    Ok(builder.finish())
}

/// Cluster labels for output: the input label where there is one, otherwise
/// a generated `c<position>` that does not clash with any existing label.
fn output_labels(c: &Clustering) -> Vec<String> {
    let mut used: HashSet<String> = (0..c.num_clusters())
        .filter_map(|i| c.label(i).map(str::to_owned))
        .collect();
    (0..c.num_clusters())
        .map(|i| match c.label(i) {
            Some(l) => l.to_owned(),
            None => {
                let mut l = format!("c{i}");
                while used.contains(&l) {
                    l.push('\'');
                }
                used.insert(l.clone());
                l
            }
        })
        .collect()
}

pub fn render_tsv(c: &Clustering) -> String {
    let labels = output_labels(c);
    let mut out = String::new();
    for (cluster, members) in c.clusters().iter().enumerate() {
        for &r in members {
            out.push_str(c.record(r as usize).as_str());
            out.push('\t');
            out.push_str(&labels[cluster]);
            out.push('\n');
        }
    }
    out
}

pub fn render_json(c: &Clustering) -> String {
    let labels = output_labels(c);
    let clusters = c
        .clusters()
        .iter()
        .zip(labels)
        .map(|(members, label)| {
            let ids = members
                .iter()
                .map(|&r| c.record(r as usize).to_string())
                .collect();
            (label, ids)
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&JsonClusters { clusters })
        .expect("clustering serializes");
    s.push('\n');
    s
}

pub fn write_clustering_file(path: &Path, c: &Clustering, format: Option<Format>) -> Result<(), HarnessError> {
    let text = match format.unwrap_or_else(|| Format::from_path(path)) {
        Format::Tsv => render_tsv(c),
        Format::Json => render_json(c),
    };
    fs::write(path, text).map_err(|source| HarnessError::Io {
        path: path.to_owned(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use ermetrics_core::ModelError;

    #[test]
    fn parses_tsv_example() {
        let c = parse_tsv("a\t1\nb\t1\nd\t1\nc\t2\ne\t2", "t").unwrap();
        assert_eq!(c.canonical(), vec![vec!["a", "b", "d"], vec!["c", "e"]]);
    }

    #[test]
    fn skips_comments_blank_lines_and_crlf() {
        let c = parse_tsv("# header\r\n\r\na\t1\r\nb\t1\r\n", "t").unwrap();
        assert_eq!(c.canonical(), vec![vec!["a", "b"]]);
    }

    #[test]
    fn empty_file_is_empty_clustering() {
        assert!(parse_tsv("", "t").unwrap().is_empty());
        assert!(parse_json(r#"{"clusters": {}}"#, "j").unwrap().is_empty());
    }

    #[test]
    fn conflicting_tsv_rows_report_line() {
        match parse_tsv("a\t1\na\t2", "t").unwrap_err() {
            HarnessError::Assignment { line, source, .. } => {
                assert_eq!(line, 2);
                assert!(matches!(source, ModelError::ConflictingAssignment { .. }));
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn malformed_tsv_rows() {
        for (text, line) in [("a\t1\nb", 2), ("a\t1\t2", 1), ("\t1", 1), ("a\t ", 1)] {
            match parse_tsv(text, "t").unwrap_err() {
                HarnessError::Parse { line: l, .. } => assert_eq!(l, line, "{text:?}"),
                other => panic!("unexpected {other}"),
            }
        }
    }

    #[test]
    fn parses_json_clusters() {
        let c = parse_json(r#"{"clusters": {"x": ["a", "b", "d"], "y": ["c", "e"]}}"#, "j").unwrap();
        assert_eq!(c.canonical(), vec![vec!["a", "b", "d"], vec!["c", "e"]]);
        assert_eq!(c.label(0), Some("x"));
    }

    #[test]
    fn json_errors_carry_position() {
        match parse_json("{\n  \"clusters\": [1]\n}", "j").unwrap_err() {
            HarnessError::Parse { line, column, .. } => {
                assert_eq!(line, 2);
                assert!(column.is_some());
            }
            other => panic!("unexpected {other}"),
        }
        assert!(matches!(
            parse_json(r#"{"clusters": {"x": ["a"], "y": ["a"]}}"#, "j"),
            Err(HarnessError::Model(ModelError::ConflictingAssignment { .. }))
        ));
    }

    #[test]
    fn rendered_files_parse_back() {
        let c = Clustering::from_clusters([
            (Some("c1".to_string()), vec![RecordId::new("a").unwrap()]),
            (None, vec![RecordId::new("b").unwrap(), RecordId::new("c").unwrap()]),
        ])
        .unwrap();
        let tsv = parse_tsv(&render_tsv(&c), "t").unwrap();
        let json = parse_json(&render_json(&c), "j").unwrap();
        assert!(tsv.same_partition(&c));
        assert!(json.same_partition(&c));
        assert_eq!(tsv.label(0), Some("c1"));
        assert_eq!(tsv.label(1), Some("c1'"));
    }

    #[test]
    fn format_from_extension() {
        assert_eq!(Format::from_path(Path::new("x.JSON")), Format::Json);
        assert_eq!(Format::from_path(Path::new("x.tsv")), Format::Tsv);
        assert_eq!(Format::from_path(Path::new("x")), Format::Tsv);
    }
}
