use thiserror::Error;

/// Errors raised while building or aligning clusterings.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("record id is empty")]
    EmptyRecordId,

    /// One record was given two different cluster labels.
    #[error("record `{record}` assigned to cluster `{first}` and to cluster `{second}`")]
    ConflictingAssignment {
        record: String,
        first: String,
        second: String,
    },

    /// Under the strict policy the two clusterings must cover the same records.
    #[error(
        "universe mismatch: {left_only} record(s) only in prediction (e.g. {left_sample:?}), \
         {right_only} record(s) only in gold (e.g. {right_sample:?})"
    )]
    UniverseMismatch {
        left_only: usize,
        right_only: usize,
        left_sample: Vec<String>,
        right_sample: Vec<String>,
    },
}

/// A metric's precondition does not hold for the given table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("metric is undefined for an empty clustering")]
    EmptyClustering,
}
