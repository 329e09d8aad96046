use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::config::ForgeConfig;
use super::generate::{generate_examples, AdverbMeta, Example};
use super::modules::{emit_module_datasets, ModuleDatasets, ModuleKind, ModuleRecord};
use super::splits::{build_splits, SplitPartition};
use super::ForgeError;
use crate::gridworld::{symbols_to_tokens, ActionSymbol, Command, Verb, WorldState};
use crate::meta::{sample_registry_with, Lexicon, Registry, RegistrySummary};

pub const SCHEMA_VERSION: u32 = 1;
pub const MANIFEST_FILE: &str = "manifest";
const EXAMPLES_FILE: &str = "examples.ndrec";
const SPLITS_FILE: &str = "splits.ndrec";
const REGISTRY_FILE: &str = "registry.adv";

/// A complete generated dataset held in memory.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub config: ForgeConfig,
    pub registry: Registry,
    pub examples: Vec<Example>,
    pub splits: Vec<SplitPartition>,
    pub modules: ModuleDatasets,
}

impl Dataset {
    pub fn lexicon(&self) -> Result<Lexicon, ForgeError> {
        self.config.lexicon(&self.registry)
    }

    pub fn split(&self, name: &str) -> Option<&SplitPartition> {
        self.splits.iter().find(|s| s.name == name)
    }

    /// Manifest without file digests.
    pub fn summary(&self) -> DatasetManifest {
        let mut adverbs = BTreeMap::new();
        let mut verbs = BTreeMap::new();
        let mut no_adverb = 0;
        for ex in &self.examples {
            match &ex.adverb {
                Some(a) => *adverbs.entry(a.surface.clone()).or_insert(0) += 1,
                None => no_adverb += 1,
            }
            *verbs.entry(ex.verb.as_str().to_string()).or_insert(0) += 1;
        }
        let n = self.examples.len();
        let splits = self
            .splits
            .iter()
            .map(|s| {
                let counts = SplitCounts {
                    train: s.train.len(),
                    test: s.test.len(),
                    excluded: n - s.train.len() - s.test.len(),
                };
                (s.name.clone(), counts)
            })
            .collect();
        DatasetManifest {
            schema_version: SCHEMA_VERSION,
            config: self.config.clone(),
            registry: RegistrySummary::from(&self.registry),
            num_examples: n,
            splits,
            adverbs,
            no_adverb,
            verbs,
            files: BTreeMap::new(),
        }
    }
}

/// Train/test sizes of one split. `excluded` counts examples a type-subset
/// split dropped from its base's train set; the three sum to the dataset size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitCounts {
    pub train: usize,
    pub test: usize,
    pub excluded: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetManifest {
    pub schema_version: u32,
    pub config: ForgeConfig,
    pub registry: RegistrySummary,
    pub num_examples: usize,
    pub splits: BTreeMap<String, SplitCounts>,
    /// Example counts per adverb surface.
    pub adverbs: BTreeMap<String, usize>,
    pub no_adverb: usize,
    pub verbs: BTreeMap<String, usize>,
    /// SHA-256 (hex) of every data file, by file name.
    pub files: BTreeMap<String, String>,
}

impl DatasetManifest {
    /// Canonical text: pretty JSON with sorted keys.
    pub fn to_text(&self) -> String {
        let value = serde_json::to_value(self).expect("manifest serializes");
        let mut s = serde_json::to_string_pretty(&value).expect("value serializes");
        s.push('\n');
        s
    }

    /// Digest of the canonical text; identifies the dataset's exact bytes.
    pub fn digest(&self) -> String {
        sha256_hex(self.to_text().as_bytes())
    }
}

/// One line of `examples.ndrec`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExampleRecord {
    pub index: usize,
    /// Label in the first configured split.
    pub split: Option<String>,
    pub command: Vec<String>,
    pub target: Vec<String>,
    pub situation: WorldState,
    pub adverb: Option<AdverbMeta>,
    pub verb: Verb,
}

impl ExampleRecord {
    pub fn from_example(ex: &Example, split: Option<&SplitPartition>) -> Self {
        ExampleRecord {
            index: ex.index,
            split: split.and_then(|s| s.label(ex.index)).map(str::to_string),
            command: ex.command.tokens(),
            target: symbols_to_tokens(&ex.target),
            situation: ex.world.clone(),
            adverb: ex.adverb.clone(),
            verb: ex.verb,
        }
    }

    pub fn into_example(self) -> Result<Example, String> {
        let command = Command::from_tokens(&self.command).map_err(|e| e.to_string())?;
        let target = self
            .target
            .iter()
            .map(|t| t.parse::<ActionSymbol>().map_err(|e| e.to_string()))
            .collect::<Result<Vec<_>, _>>()?;
        if command.verb != self.verb {
            return Err(format!("verb `{}` disagrees with the command", self.verb));
        }
        if command.adverb_surface() != self.adverb.as_ref().map(|a| a.surface.clone()) {
            return Err("adverb metadata disagrees with the command".into());
        }
        Ok(Example { index: self.index, command, world: self.situation, target, adverb: self.adverb, verb: self.verb })
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn to_line<T: Serialize>(record: &T) -> String {
    // Going through `Value` sorts object keys.
    let value = serde_json::to_value(record).expect("record serializes");
    let mut line = serde_json::to_string(&value).expect("value serializes");
    line.push('\n');
    line
}

fn ndrec<T: Serialize>(records: &[T]) -> String {
    records.iter().map(to_line).collect()
}

fn parse_ndrec<T: DeserializeOwned>(file: &str, text: &str) -> Result<Vec<T>, ForgeError> {
    text.lines()
        .enumerate()
        .map(|(i, line)| {
            serde_json::from_str(line).map_err(|e| ForgeError::MalformedRecord {
                file: file.to_string(),
                line: i + 1,
                message: e.to_string(),
            })
        })
        .collect()
}

/// Samples the registry, generates examples on `jobs` threads, builds the
/// splits and the module records.
pub fn forge(cfg: &ForgeConfig, jobs: usize) -> Result<Dataset, ForgeError> {
    cfg.validate()?;
    let registry = sample_registry_with(cfg.seed, cfg.extra_adverbs, &cfg.meta, &cfg.pinned_programs()?)?;
    let lexicon = cfg.lexicon(&registry)?;
    let examples = generate_examples(cfg, &lexicon, jobs)?;
    let splits = build_splits(&examples, &cfg.splits, &lexicon, cfg.seed)?;
    let modules = emit_module_datasets(&examples, &lexicon, &cfg.oracle)?;
    Ok(Dataset { config: cfg.clone(), registry, examples, splits, modules })
}

fn data_files(ds: &Dataset) -> Vec<(&'static str, String)> {
    let first = ds.splits.first();
    let records: Vec<ExampleRecord> = ds.examples.iter().map(|e| ExampleRecord::from_example(e, first)).collect();
    vec![
        (EXAMPLES_FILE, ndrec(&records)),
        (SPLITS_FILE, ndrec(&ds.splits)),
        (REGISTRY_FILE, ds.registry.to_text()),
        (ModuleKind::Perception.file_name(), ndrec(&ds.modules.perception)),
        (ModuleKind::Navigation.file_name(), ndrec(&ds.modules.navigation)),
        (ModuleKind::Interaction.file_name(), ndrec(&ds.modules.interaction)),
        (ModuleKind::Transformation.file_name(), ndrec(&ds.modules.transformation)),
    ]
}

/// Writes every data file plus the manifest into `out_dir` (created if
/// missing) and returns the manifest.
pub fn write_dataset(ds: &Dataset, out_dir: &Path) -> Result<DatasetManifest, ForgeError> {
    fs::create_dir_all(out_dir).map_err(|e| ForgeError::io(out_dir, e))?;
    let mut manifest = ds.summary();
    for (name, text) in data_files(ds) {
        let path = out_dir.join(name);
        fs::write(&path, text.as_bytes()).map_err(|e| ForgeError::io(&path, e))?;
        manifest.files.insert(name.to_string(), sha256_hex(text.as_bytes()));
    }
    let path = out_dir.join(MANIFEST_FILE);
    fs::write(&path, manifest.to_text()).map_err(|e| ForgeError::io(&path, e))?;
    Ok(manifest)
}

fn read_checked(dir: &Path, manifest: &DatasetManifest, name: &str) -> Result<String, ForgeError> {
    let expected = manifest.files.get(name).ok_or_else(|| ForgeError::MalformedRecord {
        file: MANIFEST_FILE.into(),
        line: 0,
        message: format!("no digest for `{name}`"),
    })?;
    let path = dir.join(name);
    let bytes = fs::read(&path).map_err(|e| ForgeError::io(&path, e))?;
    if &sha256_hex(&bytes) != expected {
        return Err(ForgeError::DigestMismatch { file: name.to_string() });
    }
    String::from_utf8(bytes).map_err(|e| ForgeError::MalformedRecord {
        file: name.into(),
        line: 0,
        message: e.to_string(),
    })
}

fn read_modules<I: DeserializeOwned, T: DeserializeOwned>(
    dir: &Path,
    manifest: &DatasetManifest,
    kind: ModuleKind,
) -> Result<Vec<ModuleRecord<I, T>>, ForgeError> {
    let name = kind.file_name();
    let records: Vec<ModuleRecord<I, T>> = parse_ndrec(name, &read_checked(dir, manifest, name)?)?;
    if let Some(pos) = records.iter().position(|r| r.module != kind) {
        return Err(ForgeError::MalformedRecord {
            file: name.into(),
            line: pos + 1,
            message: "wrong module kind".into(),
        });
    }
    Ok(records)
}

/// Reads only the manifest, checking its schema version.
pub fn read_manifest(dir: &Path) -> Result<DatasetManifest, ForgeError> {
    let path = dir.join(MANIFEST_FILE);
    let text = fs::read_to_string(&path).map_err(|e| ForgeError::io(&path, e))?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| ForgeError::MalformedRecord {
        file: MANIFEST_FILE.into(),
        line: e.line(),
        message: e.to_string(),
    })?;
    let found = value.get("schema_version").and_then(|v| v.as_u64()).unwrap_or(0) as u32;
    if found != SCHEMA_VERSION {
        return Err(ForgeError::SchemaMismatch { found, expected: SCHEMA_VERSION });
    }
    serde_json::from_value(value).map_err(|e| ForgeError::MalformedRecord {
        file: MANIFEST_FILE.into(),
        line: 0,
        message: e.to_string(),
    })
}

/// Reads a dataset written by [`write_dataset`], verifying the schema
/// version and every file digest.
pub fn read_dataset(dir: &Path) -> Result<(Dataset, DatasetManifest), ForgeError> {
    let manifest = read_manifest(dir)?;
    let malformed =
        |file: &str, line: usize, message: String| ForgeError::MalformedRecord { file: file.into(), line, message };

    let registry = Registry::from_text(&read_checked(dir, &manifest, REGISTRY_FILE)?)?;
    if registry.digest() != manifest.registry.digest {
        return Err(malformed(REGISTRY_FILE, 0, "registry digest differs from the manifest".into()));
    }

    let records: Vec<ExampleRecord> = parse_ndrec(EXAMPLES_FILE, &read_checked(dir, &manifest, EXAMPLES_FILE)?)?;
    let mut examples = Vec::with_capacity(records.len());
    for (i, r) in records.into_iter().enumerate() {
        if r.index != i {
            return Err(malformed(EXAMPLES_FILE, i + 1, format!("index {} out of order", r.index)));
        }
        examples.push(r.into_example().map_err(|m| malformed(EXAMPLES_FILE, i + 1, m))?);
    }

    let splits: Vec<SplitPartition> = parse_ndrec(SPLITS_FILE, &read_checked(dir, &manifest, SPLITS_FILE)?)?;
    let modules = ModuleDatasets {
        perception: read_modules(dir, &manifest, ModuleKind::Perception)?,
        navigation: read_modules(dir, &manifest, ModuleKind::Navigation)?,
        interaction: read_modules(dir, &manifest, ModuleKind::Interaction)?,
        transformation: read_modules(dir, &manifest, ModuleKind::Transformation)?,
    };
    let ds = Dataset { config: manifest.config.clone(), registry, examples, splits, modules };
    Ok((ds, manifest))
}
