//! Ranking candidates under several metrics and finding where the metrics
//! disagree.

use std::cmp::Ordering;
use std::fmt::Write as _;

use ermetrics_core::Clustering;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::HarnessError;
use crate::evaluate::{evaluate, EvalOptions};
use crate::metrics::{Metric, Orientation};
use crate::report::MetricReport;

/// Score differences at or below this are ties.
pub const TIE_TOLERANCE: f64 = 1e-12;

pub struct Candidate {
    pub name: String,
    pub clustering: Clustering,
}

/// Two metrics order one pair of candidates oppositely.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Inversion {
    /// Candidate preferred by `metricA`.
    pub preferred_by_a: String,
    /// Candidate preferred by `metricB`.
    pub preferred_by_b: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Conflict {
    pub metric_a: String,
    pub metric_b: String,
    pub inversions: Vec<Inversion>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RankSummary {
    pub candidates: Vec<String>,
    pub metrics: Vec<String>,
    /// `scores[m][c]`: raw value of metric `m` for candidate `c`.
    pub scores: Vec<Vec<Option<f64>>>,
    /// `ranks[m][c]`: 1 is best; tied candidates share the better rank.
    pub ranks: Vec<Vec<Option<usize>>>,
    /// Kendall tau-b between metric rankings; `None` when undefined
    /// (a metric ties every comparable pair).
    pub tau: Vec<Vec<Option<f64>>>,
    pub conflicts: Vec<Conflict>,
}

impl RankSummary {
    pub fn has_conflict(&self, a: Metric, b: Metric) -> bool {
        self.conflict(a, b).is_some()
    }

    pub fn conflict(&self, a: Metric, b: Metric) -> Option<&Conflict> {
        self.conflicts.iter().find(|c| {
            (c.metric_a == a.name() && c.metric_b == b.name())
                || (c.metric_a == b.name() && c.metric_b == a.name())
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("summary serializes");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let width = self.metrics.iter().map(|m| m.len()).max().unwrap_or(0).max(6);
        let _ = write!(out, "{:<width$}", "metric");
        for c in &self.candidates {
            let _ = write!(out, "  {c:>16}");
        }
        out.push('\n');
        for (m, name) in self.metrics.iter().enumerate() {
            let _ = write!(out, "{name:<width$}");
            for c in 0..self.candidates.len() {
                let cell = match (self.scores[m][c], self.ranks[m][c]) {
                    (Some(v), Some(r)) => format!("{v:.6} (#{r})"),
                    _ => "n/a".to_owned(),
                };
                let _ = write!(out, "  {cell:>16}");
            }
            out.push('\n');
        }
        out.push_str("\nkendall tau-b\n");
        let _ = write!(out, "{:<width$}", "");
        for name in &self.metrics {
            let _ = write!(out, "  {:>8}", truncate(name, 8));
        }
        out.push('\n');
        for (a, name) in self.metrics.iter().enumerate() {
            let _ = write!(out, "{name:<width$}");
            for t in &self.tau[a] {
                let cell = t.map(|t| format!("{t:.3}")).unwrap_or_else(|| "n/a".into());
                let _ = write!(out, "  {cell:>8}");
            }
            out.push('\n');
        }
        if self.conflicts.is_empty() {
            out.push_str("\nno ranking conflicts\n");
        } else {
            out.push_str("\nconflicts\n");
            for c in &self.conflicts {
                for inv in &c.inversions {
                    let _ = writeln!(
                        out,
                        "  {} prefers {} but {} prefers {}",
                        c.metric_a, inv.preferred_by_a, c.metric_b, inv.preferred_by_b
                    );
                }
            }
        }
        out
    }
}

fn truncate(s: &str, n: usize) -> &str {
    match s.char_indices().nth(n) {
        Some((i, _)) => &s[..i],
        None => s,
    }
}

/// Preference of candidate `i` over `j` under an oriented score.
fn preference(a: Option<f64>, b: Option<f64>) -> Option<Ordering> {
    let (a, b) = (a?, b?);
    if (a - b).abs() <= TIE_TOLERANCE {
        Some(Ordering::Equal)
    } else {
        a.partial_cmp(&b)
    }
}

fn oriented(value: Option<f64>, orientation: Orientation) -> Option<f64> {
    match orientation {
        Orientation::Higher => value,
        Orientation::Lower => value.map(|v| -v),
        Orientation::None => None,
    }
}

fn kendall_tau_b(a: &[Option<f64>], b: &[Option<f64>]) -> Option<f64> {
    let (mut concordant, mut discordant) = (0i64, 0i64);
    let (mut pairs, mut ties_a, mut ties_b) = (0i64, 0i64, 0i64);
    for i in 0..a.len() {
        for j in (i + 1)..a.len() {
            let (Some(pa), Some(pb)) = (preference(a[i], a[j]), preference(b[i], b[j])) else {
                continue;
            };
            pairs += 1;
            match (pa, pb) {
                (Ordering::Equal, Ordering::Equal) => {
                    ties_a += 1;
                    ties_b += 1;
                }
                (Ordering::Equal, _) => ties_a += 1,
                (_, Ordering::Equal) => ties_b += 1,
                (x, y) if x == y => concordant += 1,
                _ => discordant += 1,
            }
        }
    }
    let den = (((pairs - ties_a) * (pairs - ties_b)) as f64).sqrt();
    (den > 0.0).then(|| (concordant - discordant) as f64 / den)
}

fn ranks(values: &[Option<f64>]) -> Vec<Option<usize>> {
    values
        .iter()
        .map(|v| {
            v.map(|_| {
                1 + values
                    .iter()
                    .filter(|w| preference(**w, *v) == Some(Ordering::Greater))
                    .count()
            })
        })
        .collect()
}

/// Evaluates every candidate against `gold` and compares the rankings the
/// requested metrics induce. Metrics without an orientation are skipped.
pub fn rank_compare(
    gold: &Clustering,
    candidates: &[Candidate],
    options: &EvalOptions,
) -> Result<RankSummary, HarnessError> {
    if candidates.len() < 2 {
        return Err(HarnessError::InvalidArgument(
            "rank comparison needs at least two candidates".into(),
        ));
    }
    let metrics: Vec<Metric> = options
        .metrics
        .iter()
        .copied()
        .filter(|m| m.orientation() != Orientation::None)
        .collect();
    if metrics.is_empty() {
        return Err(HarnessError::InvalidArgument(
            "no rankable metric requested".into(),
        ));
    }
    let options = EvalOptions {
        metrics: metrics.clone(),
        ..options.clone()
    };
    let reports: Vec<MetricReport> = candidates
        .par_iter()
        .map(|c| evaluate(&c.clustering, gold, &options))
        .collect::<Result<_, _>>()?;
    Ok(summarize(candidates, &metrics, &reports))
}

fn summarize(candidates: &[Candidate], metrics: &[Metric], reports: &[MetricReport]) -> RankSummary {
    let scores: Vec<Vec<Option<f64>>> = metrics
        .iter()
        .map(|&m| reports.iter().map(|r| r.get(m)).collect())
        .collect();
    let oriented_scores: Vec<Vec<Option<f64>>> = metrics
        .iter()
        .zip(&scores)
        .map(|(m, row)| row.iter().map(|&v| oriented(v, m.orientation())).collect())
        .collect();

    let k = metrics.len();
    let mut tau = vec![vec![None; k]; k];
    let mut conflicts = Vec::new();
    for a in 0..k {
        tau[a][a] = Some(1.0);
        for b in (a + 1)..k {
            let t = kendall_tau_b(&oriented_scores[a], &oriented_scores[b]);
            tau[a][b] = t;
            tau[b][a] = t;

            let mut inversions = Vec::new();
            for i in 0..candidates.len() {
                for j in (i + 1)..candidates.len() {
                    let pa = preference(oriented_scores[a][i], oriented_scores[a][j]);
                    let pb = preference(oriented_scores[b][i], oriented_scores[b][j]);
                    let name = |x: usize| candidates[x].name.clone();
                    match (pa, pb) {
                        (Some(Ordering::Greater), Some(Ordering::Less)) => inversions.push(Inversion {
                            preferred_by_a: name(i),
                            preferred_by_b: name(j),
                        }),
                        (Some(Ordering::Less), Some(Ordering::Greater)) => inversions.push(Inversion {
                            preferred_by_a: name(j),
                            preferred_by_b: name(i),
                        }),
                        _ => {}
                    }
                }
            }
            if !inversions.is_empty() {
                conflicts.push(Conflict {
                    metric_a: metrics[a].name().to_owned(),
                    metric_b: metrics[b].name().to_owned(),
                    inversions,
                });
            }
        }
    }

    RankSummary {
        candidates: candidates.iter().map(|c| c.name.clone()).collect(),
        metrics: metrics.iter().map(|m| m.name().to_owned()).collect(),
        ranks: oriented_scores.iter().map(|row| ranks(row)).collect(),
        scores,
        tau,
        conflicts,
    }
}
