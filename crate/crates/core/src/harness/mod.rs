//! Exact-match and semantic evaluation of external predictions, dataset
//! statistics and human-readable inspection.

mod eval;
mod inspect;
mod stats;

pub use eval::{
    aggregate, evaluate, exact_match, format_percent, parse_predictions, semantically_valid, AggregateReport,
    EvalReport, PredictionRecord, SplitAggregate, SplitMetrics,
};
pub use inspect::{inspect, render_grid};
pub use stats::{dataset_stats, DatasetStats, LengthStats};

use crate::forge::ForgeError;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("no prediction for test example {0}")]
    MissingPrediction(usize),
    #[error("more than one prediction for example {0}")]
    DuplicatePrediction(usize),
    #[error("prediction for unknown example {0}")]
    UnknownIndex(usize),
    #[error("unknown split `{0}`")]
    UnknownSplit(String),
    #[error("predictions line {line}: {message}")]
    MalformedPrediction { line: usize, message: String },
    #[error("reports were computed on different datasets")]
    MixedDatasets,
    #[error("nothing to aggregate")]
    NoReports,
    #[error(transparent)]
    Forge(#[from] ForgeError),
}
