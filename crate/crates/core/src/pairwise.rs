//! Pairwise precision, recall and F1 over intra-cluster record pairs.
//!
//! Pairs are those of the final clustering, regardless of which direct
//! matches produced it. Inter-cluster pairs never enter a score.

use crate::model::choose2;
use crate::overlap::Overlap;

/// A precision/recall pair and their harmonic mean.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrecisionRecall {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl PrecisionRecall {
    /// F1 is 0 when both inputs are 0.
    pub fn new(precision: f64, recall: f64) -> Self {
        Self {
            precision,
            recall,
            f1: harmonic_mean(precision, recall),
        }
    }
}

pub(crate) fn harmonic_mean(a: f64, b: f64) -> f64 {
    if a + b == 0.0 {
        0.0
    } else {
        2.0 * a * b / (a + b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairwiseScores {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    /// |Pairs(S)|
    pub true_pairs: u64,
    /// |Pairs(R)|
    pub predicted_pairs: u64,
    /// |Pairs(R) ∩ Pairs(S)|
    pub shared_pairs: u64,
    /// Precision was set to 1 because the prediction has no pairs.
    pub vacuous_precision: bool,
    /// Recall was set to 1 because the gold clustering has no pairs.
    pub vacuous_recall: bool,
}

impl PairwiseScores {
    pub fn degenerate(&self) -> bool {
        self.vacuous_precision || self.vacuous_recall
    }

    pub fn as_precision_recall(&self) -> PrecisionRecall {
        PrecisionRecall {
            precision: self.precision,
            recall: self.recall,
            f1: self.f1,
        }
    }
}

/// Two records share a pair in both clusterings iff they land in the same
/// contingency cell.
pub fn shared_pair_count(o: &Overlap) -> u64 {
    o.cells().iter().map(|c| choose2(c.count)).sum()
}

pub fn pairwise(o: &Overlap) -> PairwiseScores {
    let predicted_pairs: u64 = o.row_sizes().iter().copied().map(choose2).sum();
    let true_pairs: u64 = o.col_sizes().iter().copied().map(choose2).sum();
    let shared_pairs = shared_pair_count(o);

    let vacuous_precision = predicted_pairs == 0;
    let vacuous_recall = true_pairs == 0;
    let precision = ratio_or_one(shared_pairs, predicted_pairs);
    let recall = ratio_or_one(shared_pairs, true_pairs);
    PairwiseScores {
        precision,
        recall,
        f1: harmonic_mean(precision, recall),
        true_pairs,
        predicted_pairs,
        shared_pairs,
        vacuous_precision,
        vacuous_recall,
    }
}

fn ratio_or_one(num: u64, den: u64) -> f64 {
    if den == 0 {
        1.0
    } else {
        num as f64 / den as f64
    }
}
