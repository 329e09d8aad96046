//! End-to-end and per-module dataset generation, split construction and
//! deterministic on-disk serialization.

mod config;
mod generate;
mod io;
mod modules;
mod presets;
mod splits;

pub use config::{ForgeConfig, NamedSplit, SplitSpec};
pub use generate::{generate_example, generate_examples, AdverbMeta, Example};
pub use io::{
    forge, read_dataset, read_manifest, write_dataset, Dataset, DatasetManifest, ExampleRecord, SplitCounts,
    MANIFEST_FILE, SCHEMA_VERSION,
};
pub use modules::{
    emit_module_datasets, recompose, InteractionInputs, InteractionRecord, ModuleDatasets, ModuleKind, ModuleRecord,
    NavigationInputs, NavigationRecord, PerceptionInputs, PerceptionRecord, TransformationInputs, TransformationRecord,
};
pub use presets::{preset, preset_names};
pub use splits::{build_splits, Filter, SplitPartition};

use std::path::PathBuf;

use crate::gridworld::SampleError;
use crate::meta::MetaError;
use crate::oracle::OracleError;

#[derive(Debug, thiserror::Error)]
pub enum ForgeError {
    #[error("invalid forge config: {0}")]
    Config(String),
    #[error(transparent)]
    Meta(#[from] MetaError),
    #[error(transparent)]
    Sample(#[from] SampleError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("example {index}: adverb `{adverb}` not realizable after {attempts} situations")]
    RetryExhausted { index: usize, adverb: String, attempts: usize },
    #[error("split `{split}` needs {needed} matching examples, found {found}")]
    InsufficientExamples { split: String, needed: usize, found: usize },
    #[error("unknown split `{0}`")]
    UnknownSplit(String),
    #[error("example {index}: module records disagree on {what}")]
    Recomposition { index: usize, what: String },
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("schema version {found}, expected {expected}")]
    SchemaMismatch { found: u32, expected: u32 },
    #[error("digest mismatch for `{file}`")]
    DigestMismatch { file: String },
    #[error("{file}:{line}: {message}")]
    MalformedRecord { file: String, line: usize, message: String },
}

impl ForgeError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        ForgeError::Io { path: path.into(), source }
    }
}
