use ermetrics_core::{
    align, closest_cluster, exact_cluster, gmd, info_scores, inter_pair_count,
    overlap, pairwise, purity_family, AlignedPair, Clustering, GmdConfig, MetricError,
    UniversePolicy,
};

use crate::error::HarnessError;
use crate::metrics::{Group, Metric};
use crate::report::{Counts, Flag, FlagKind, MetricReport, MetricValue, ReportConfig, SCHEMA_VERSION};

#[derive(Clone, Debug, PartialEq)]
pub struct EvalOptions {
    pub metrics: Vec<Metric>,
    pub universe: UniversePolicy,
    /// V-measure weight; must be positive.
    pub beta: f64,
    pub gmd: GmdConfig,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self {
            metrics: Metric::ALL.to_vec(),
            universe: UniversePolicy::Strict,
            beta: 1.0,
            gmd: GmdConfig::default(),
        }
    }
}

/// Scores `pred` against `gold`.
///
/// Alignment errors abort; a metric whose precondition fails is reported as
/// `null` with an `unavailable` flag while the rest are still computed.
pub fn evaluate(
    pred: &Clustering,
    gold: &Clustering,
    options: &EvalOptions,
) -> Result<MetricReport, HarnessError> {
    if !(options.beta.is_finite() && options.beta > 0.0) {
        return Err(HarnessError::InvalidArgument(format!(
            "beta must be a positive number, got {}",
            options.beta
        )));
    }
    let pair = align(pred, gold, options.universe)?;
    Ok(evaluate_aligned(&pair, options))
}

pub fn evaluate_aligned(pair: &AlignedPair, options: &EvalOptions) -> MetricReport {
    let table = overlap(pair);
    let wants = |g: Group| options.metrics.iter().any(|m| m.group() == g);
    let mut flags = Vec::new();

    let pw = pairwise(&table);
    let exact = wants(Group::Exact).then(|| exact_cluster(&table));
    let closest = wants(Group::Closest).then(|| closest_cluster(&table));
    let purity = wants(Group::Purity).then(|| purity_family(&table));
    let info = wants(Group::Entropy).then(|| info_scores(&table, options.beta));
    let distance = wants(Group::Gmd).then(|| gmd(&table, &options.gmd));

    let unavailable = |e: &MetricError| e.to_string();
    let mut metrics = Vec::with_capacity(options.metrics.len());
    for &metric in &options.metrics {
        let value: Result<f64, String> = match metric {
            Metric::PairwisePrecision => Ok(pw.precision),
            Metric::PairwiseRecall => Ok(pw.recall),
            Metric::PairwiseF1 => Ok(pw.f1),
            Metric::ExactPrecision => Ok(exact.unwrap().precision),
            Metric::ExactRecall => Ok(exact.unwrap().recall),
            Metric::ExactF1 => Ok(exact.unwrap().f1),
            Metric::CcPrecision | Metric::CcRecall | Metric::CcF1 => {
                closest.unwrap().map_err(|e| unavailable(&e)).map(|cc| match metric {
                    Metric::CcPrecision => cc.precision,
                    Metric::CcRecall => cc.recall,
                    _ => cc.f1,
                })
            }
            Metric::Acp | Metric::Aap | Metric::K | Metric::ManningPurity => {
                purity.unwrap().map_err(|e| unavailable(&e)).map(|p| match metric {
                    Metric::Acp => p.acp,
                    Metric::Aap => p.aap,
                    Metric::K => p.k,
                    _ => p.manning,
                })
            }
            Metric::Gmd => Ok(distance.unwrap()),
            _ => info.unwrap().map_err(|e| unavailable(&e)).map(|s| match metric {
                Metric::EntropyGold => s.h_gold,
                Metric::EntropyPred => s.h_pred,
                Metric::EntropyGoldGivenPred => s.h_gold_given_pred,
                Metric::EntropyPredGivenGold => s.h_pred_given_gold,
                Metric::Homogeneity => s.homogeneity,
                Metric::Completeness => s.completeness,
                Metric::VMeasure => s.v_measure,
                _ => s.vi,
            }),
        };
        let value = match value {
            Ok(v) => Some(v),
            Err(detail) => {
                flags.push(Flag {
                    metric: metric.name().to_owned(),
                    kind: FlagKind::Unavailable,
                    detail,
                });
                None
            }
        };
        metrics.push(MetricValue {
            name: metric.name().to_owned(),
            value,
            orientation: metric.orientation(),
        });
    }

    let requested = |m: Metric| options.metrics.contains(&m);
    if pw.vacuous_precision && requested(Metric::PairwisePrecision) {
        flags.push(degenerate(Metric::PairwisePrecision, "prediction has no intra-cluster pairs; precision set to 1"));
    }
    if pw.vacuous_recall && requested(Metric::PairwiseRecall) {
        flags.push(degenerate(Metric::PairwiseRecall, "gold has no intra-cluster pairs; recall set to 1"));
    }
    if table.n() == 0 && requested(Metric::ExactPrecision) {
        flags.push(degenerate(Metric::ExactPrecision, "no clusters; exact-cluster scores set to 1"));
    }

    MetricReport {
        schema_version: SCHEMA_VERSION,
        metrics,
        counts: Counts {
            n: pair.n() as u64,
            clusters_pred: pair.left().num_clusters() as u64,
            clusters_gold: pair.right().num_clusters() as u64,
            intra_pairs_pred: pw.predicted_pairs,
            intra_pairs_gold: pw.true_pairs,
            inter_pairs_pred: inter_pair_count(pair.left()),
            shared_pairs: pw.shared_pairs,
        },
        flags,
        config: ReportConfig {
            universe: options.universe.to_string(),
            beta: options.beta,
            gmd_split: options.gmd.split.to_string(),
            gmd_merge: options.gmd.merge.to_string(),
            entropy_unit: "nats".to_owned(),
        },
    }
}

fn degenerate(metric: Metric, detail: &str) -> Flag {
    Flag {
        metric: metric.name().to_owned(),
        kind: FlagKind::Degenerate,
        detail: detail.to_owned(),
    }
}
