//! Evaluation harness for entity-resolution clusterings: file formats,
//! metric reports, synthetic data, seeded perturbations and ranking
//! comparisons. The `ermetrics` binary is a thin layer over this crate.

pub mod error;
pub mod evaluate;
pub mod io;
pub mod metrics;
pub mod perturb;
pub mod rank;
pub mod report;
pub mod synth;

pub use error::HarnessError;
pub use evaluate::{evaluate, evaluate_aligned, EvalOptions};
pub use io::{parse_clustering_file, write_clustering_file, Format};
pub use metrics::{parse_metric_list, Group, Metric, Orientation};
pub use perturb::{perturb, replay, OpMix, PerturbOp, PerturbationLog};
pub use rank::{rank_compare, Candidate, Conflict, RankSummary};
pub use report::{MetricReport, ReportError};
pub use synth::{random_partition, singletons_of, SizeProfile};
