//! Entropy-based scores: homogeneity, completeness, V-measure and the
//! variation of information.
//!
//! All entropies are in nats and use record proportions (`|s| / N`) as
//! probabilities. `0 · ln 0` is taken as 0; the sparse table never produces
//! such a term in the first place.

use crate::error::MetricError;
use crate::overlap::Overlap;

/// Which conditional entropy to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conditioning {
    /// H(S|R): uncertainty about the gold cluster given the predicted one.
    GoldGivenPrediction,
    /// H(R|S)
    PredictionGivenGold,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InfoScores {
    /// H(S)
    pub h_gold: f64,
    /// H(R)
    pub h_pred: f64,
    /// H(S|R)
    pub h_gold_given_pred: f64,
    /// H(R|S)
    pub h_pred_given_gold: f64,
    pub homogeneity: f64,
    pub completeness: f64,
    pub v_measure: f64,
    pub beta: f64,
    pub vi: f64,
}

/// Entropy of a clustering from its cluster sizes.
///
/// # Panics
///
/// If `n` is zero or differs from the sum of `sizes`.
pub fn marginal_entropy(sizes: &[u64], n: u64) -> f64 {
    assert!(n > 0, "entropy of an empty clustering is undefined");
    assert_eq!(sizes.iter().sum::<u64>(), n, "sizes must sum to n");
    let total = n as f64;
    let ln_n = total.ln();
    let h: f64 = sizes
        .iter()
        .filter(|&&s| s > 0)
        .map(|&s| {
            let s = s as f64;
            s * (ln_n - s.ln())
        })
        .sum::<f64>()
        / total;
    h.max(0.0)
}

pub fn conditional_entropy(o: &Overlap, which: Conditioning) -> Result<f64, MetricError> {
    if o.n() == 0 {
        return Err(MetricError::EmptyClustering);
    }
    // H(S|R) = (1/N) Σ c · ln(|r| / c); the conditioning side supplies the denominator.
    let given = match which {
        Conditioning::GoldGivenPrediction => o.row_sizes(),
        Conditioning::PredictionGivenGold => o.col_sizes(),
    };
    let sum: f64 = o
        .cells()
        .iter()
        .map(|c| {
            let size = match which {
                Conditioning::GoldGivenPrediction => given[c.row as usize],
                Conditioning::PredictionGivenGold => given[c.col as usize],
            };
            if size == c.count {
                0.0
            } else {
                let count = c.count as f64;
                count * ((size as f64).ln() - count.ln())
            }
        })
        .sum();
    Ok((sum / o.n() as f64).max(0.0))
}

fn entropy_ratio_score(conditional: f64, marginal: f64) -> f64 {
    if marginal == 0.0 {
        1.0
    } else {
        (1.0 - conditional / marginal).clamp(0.0, 1.0)
    }
}

/// `(homogeneity, completeness)`; each is 1 when the corresponding marginal
/// entropy is zero.
pub fn homogeneity_completeness(o: &Overlap) -> Result<(f64, f64), MetricError> {
    let scores = info_scores(o, 1.0)?;
    Ok((scores.homogeneity, scores.completeness))
}

/// Weighted harmonic mean of homogeneity and completeness. `beta > 1`
/// favours completeness. Returns 0 when both inputs are 0.
pub fn v_measure(homogeneity: f64, completeness: f64, beta: f64) -> f64 {
    assert!(beta > 0.0, "beta must be positive");
    let b2 = beta * beta;
    let den = b2 * homogeneity + completeness;
    if den == 0.0 {
        0.0
    } else {
        (1.0 + b2) * homogeneity * completeness / den
    }
}

/// VI = H(S|R) + H(R|S), in nats.
pub fn variation_of_information(o: &Overlap) -> Result<f64, MetricError> {
    Ok(conditional_entropy(o, Conditioning::GoldGivenPrediction)?
        + conditional_entropy(o, Conditioning::PredictionGivenGold)?)
}

pub fn info_scores(o: &Overlap, beta: f64) -> Result<InfoScores, MetricError> {
    if o.n() == 0 {
        return Err(MetricError::EmptyClustering);
    }
    let h_gold = marginal_entropy(o.col_sizes(), o.n());
    let h_pred = marginal_entropy(o.row_sizes(), o.n());
    let h_gold_given_pred = conditional_entropy(o, Conditioning::GoldGivenPrediction)?;
    let h_pred_given_gold = conditional_entropy(o, Conditioning::PredictionGivenGold)?;
    let homogeneity = entropy_ratio_score(h_gold_given_pred, h_gold);
    let completeness = entropy_ratio_score(h_pred_given_gold, h_pred);
    Ok(InfoScores {
        h_gold,
        h_pred,
        h_gold_given_pred,
        h_pred_given_gold,
        homogeneity,
        completeness,
        v_measure: v_measure(homogeneity, completeness, beta),
        beta,
        vi: h_gold_given_pred + h_pred_given_gold,
    })
}
