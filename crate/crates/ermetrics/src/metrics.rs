//! The catalogue of reportable metrics, their report names and orientation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Which direction of a metric is better. Stored in every report so that
/// ranking never has to guess.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Higher,
    Lower,
    /// Descriptive only (marginal entropies); not used for ranking.
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Metric {
    PairwisePrecision,
    PairwiseRecall,
    PairwiseF1,
    ExactPrecision,
    ExactRecall,
    ExactF1,
    CcPrecision,
    CcRecall,
    CcF1,
    Acp,
    Aap,
    K,
    ManningPurity,
    EntropyGold,
    EntropyPred,
    EntropyGoldGivenPred,
    EntropyPredGivenGold,
    Homogeneity,
    Completeness,
    VMeasure,
    Vi,
    Gmd,
}

/// Metric families that are computed together.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    Pairwise,
    Exact,
    Closest,
    Purity,
    Entropy,
    Gmd,
}

impl Group {
    pub fn name(self) -> &'static str {
        match self {
            Self::Pairwise => "pairwise",
            Self::Exact => "exact",
            Self::Closest => "closest",
            Self::Purity => "purity",
            Self::Entropy => "entropy",
            Self::Gmd => "gmd",
        }
    }
}

impl Metric {
    pub const ALL: [Metric; 22] = [
        Metric::PairwisePrecision,
        Metric::PairwiseRecall,
        Metric::PairwiseF1,
        Metric::ExactPrecision,
        Metric::ExactRecall,
        Metric::ExactF1,
        Metric::CcPrecision,
        Metric::CcRecall,
        Metric::CcF1,
        Metric::Acp,
        Metric::Aap,
        Metric::K,
        Metric::ManningPurity,
        Metric::EntropyGold,
        Metric::EntropyPred,
        Metric::EntropyGoldGivenPred,
        Metric::EntropyPredGivenGold,
        Metric::Homogeneity,
        Metric::Completeness,
        Metric::VMeasure,
        Metric::Vi,
        Metric::Gmd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::PairwisePrecision => "pairwisePrecision",
            Self::PairwiseRecall => "pairwiseRecall",
            Self::PairwiseF1 => "pairwiseF1",
            Self::ExactPrecision => "exactPrecision",
            Self::ExactRecall => "exactRecall",
            Self::ExactF1 => "exactF1",
            Self::CcPrecision => "ccPrecision",
            Self::CcRecall => "ccRecall",
            Self::CcF1 => "ccF1",
            Self::Acp => "acp",
            Self::Aap => "aap",
            Self::K => "k",
            Self::ManningPurity => "manningPurity",
            Self::EntropyGold => "hS",
            Self::EntropyPred => "hR",
            Self::EntropyGoldGivenPred => "hSgivenR",
            Self::EntropyPredGivenGold => "hRgivenS",
            Self::Homogeneity => "homogeneity",
            Self::Completeness => "completeness",
            Self::VMeasure => "vMeasure",
            Self::Vi => "vi",
            Self::Gmd => "gmd",
        }
    }

    pub fn orientation(self) -> Orientation {
        match self {
            Self::EntropyGold | Self::EntropyPred => Orientation::None,
            Self::EntropyGoldGivenPred | Self::EntropyPredGivenGold | Self::Vi | Self::Gmd => {
                Orientation::Lower
            }
            _ => Orientation::Higher,
        }
    }

    /// Metrics bounded in `[0, 1]` where 1 is a perfect score.
    pub fn is_unit_score(self) -> bool {
        self.orientation() == Orientation::Higher
    }

    pub fn group(self) -> Group {
        match self {
            Self::PairwisePrecision | Self::PairwiseRecall | Self::PairwiseF1 => Group::Pairwise,
            Self::ExactPrecision | Self::ExactRecall | Self::ExactF1 => Group::Exact,
            Self::CcPrecision | Self::CcRecall | Self::CcF1 => Group::Closest,
            Self::Acp | Self::Aap | Self::K | Self::ManningPurity => Group::Purity,
            Self::Gmd => Group::Gmd,
            _ => Group::Entropy,
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Metric::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown metric `{s}`"))
    }
}

/// Parses a comma-separated list of metric names, group names
/// (`pairwise`, `exact`, `closest`, `purity`, `entropy`, `gmd`) or `all`.
/// Duplicates are dropped; catalogue order is kept.
pub fn parse_metric_list(list: &str) -> Result<Vec<Metric>, String> {
    let mut chosen = Vec::new();
    for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if item == "all" {
            chosen.extend(Metric::ALL);
        } else if let Some(group) = Metric::ALL.iter().find(|m| m.group().name() == item) {
            let g = group.group();
            chosen.extend(Metric::ALL.into_iter().filter(|m| m.group() == g));
        } else {
            chosen.push(item.parse()?);
        }
    }
    if chosen.is_empty() {
        return Err("metric list is empty".into());
    }
    chosen.sort();
    chosen.dedup();
    Ok(chosen)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip_and_are_unique() {
        let mut names: Vec<&str> = Metric::ALL.iter().map(|m| m.name()).collect();
        for m in Metric::ALL {
            assert_eq!(m.name().parse::<Metric>(), Ok(m));
        }
        names.sort();
        names.dedup();
        assert_eq!(names.len(), Metric::ALL.len());
    }

    #[test]
    fn parses_lists_and_groups() {
        assert_eq!(parse_metric_list("all").unwrap().len(), Metric::ALL.len());
        assert_eq!(
            parse_metric_list("vi, pairwise,pairwiseF1").unwrap(),
            vec![
                Metric::PairwisePrecision,
                Metric::PairwiseRecall,
                Metric::PairwiseF1,
                Metric::Vi
            ]
        );
        assert!(parse_metric_list("bogus").is_err());
        assert!(parse_metric_list(" , ").is_err());
    }

    #[test]
    fn orientation() {
        assert_eq!(Metric::Vi.orientation(), Orientation::Lower);
        assert_eq!(Metric::Gmd.orientation(), Orientation::Lower);
        assert_eq!(Metric::CcF1.orientation(), Orientation::Higher);
        assert_eq!(Metric::EntropyGold.orientation(), Orientation::None);
    }
}
