//! Metrics for scoring an entity-resolution clustering against a gold
//! standard.
//!
//! Build two [`Clustering`]s, bring them onto one record universe with
//! [`align`], compute the contingency table with [`overlap`], then evaluate
//! any metric from that one table:
//!
//! ```
//! use ermetrics_core::*;
//!
//! let rows = |spec: &[(&str, &str)]| {
//!     build_clustering(spec.iter().map(|&(r, l)| (RecordId::new(r).unwrap(), l))).unwrap()
//! };
//! let pred = rows(&[("a", "1"), ("b", "1"), ("d", "1"), ("c", "2"), ("e", "2")]);
//! let gold = rows(&[("a", "x"), ("b", "x"), ("c", "y"), ("d", "y"), ("e", "y")]);
//!
//! let pair = align(&pred, &gold, UniversePolicy::Strict).unwrap();
//! let table = overlap(&pair);
//! assert_eq!(pairwise(&table).f1, 0.5);
//! assert_eq!(gmd(&table, &GmdConfig::new(CostFamily::constant(1.0), CostFamily::constant(1.0))), 2.0);
//! ```

pub mod cluster;
pub mod error;
pub mod gmd;
pub mod info;
pub mod model;
pub mod overlap;
pub mod pairwise;

pub use cluster::{
    closest_cluster, cluster_scores, exact_cluster, jaccard, purity_family, ClusterScores, Purity,
};
pub use error::{MetricError, ModelError};
pub use gmd::{
    family_cost, gmd, pairwise_via_gmd, vi_via_gmd, CostFamily, CostSpecError, GmdConfig,
};
pub use info::{
    conditional_entropy, homogeneity_completeness, info_scores, marginal_entropy, v_measure,
    variation_of_information, Conditioning, InfoScores,
};
pub use model::{
    align, build_clustering, inter_pair_count, intra_pair_count, AlignedPair, Clustering,
    ClusteringBuilder, RecordId, UniversePolicy,
};
pub use overlap::{overlap, Cell, Overlap};
pub use pairwise::{pairwise, shared_pair_count, PairwiseScores, PrecisionRecall};
