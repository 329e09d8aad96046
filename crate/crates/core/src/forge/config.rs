use serde::{Deserialize, Serialize};

use super::ForgeError;
use crate::dsl::{builtin_adverbs_with, parse_program, AdverbProgram};
use crate::gridworld::{SituationConfig, Verb};
use crate::meta::{AdverbType, Lexicon, MetaGrammarConfig, Registry};
use crate::oracle::OracleConfig;

/// How one train/test partition is built.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SplitSpec {
    /// Uniform random partition.
    Random { test_fraction: f64 },
    /// Exactly `k` examples with the adverb in train, the rest in test.
    #[serde(rename = "kshot_adverb")]
    KShotAdverb { surface: String, k: usize },
    /// Every example pairing `verb` with the adverb is held out.
    VerbAdverbHoldout { verb: Verb, surface: String },
    /// Train of `base` restricted to the registry adverbs allowed here;
    /// builtins and adverb-free examples always stay. Test is `base`'s.
    TypeSubset {
        base: String,
        #[serde(default)]
        types: Vec<AdverbType>,
        #[serde(default)]
        surfaces: Vec<String>,
    },
    /// Examples matching a named filter form the test set.
    Predicate { filter: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedSplit {
    pub name: String,
    #[serde(flatten)]
    pub spec: SplitSpec,
}

/// Everything that determines a generated dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ForgeConfig {
    pub seed: u64,
    pub num_examples: usize,
    /// Number of sampled adverbs added to the four builtins.
    pub extra_adverbs: usize,
    /// Probability that a command carries no adverb.
    pub no_adverb_prob: f64,
    /// Situation resamples allowed per example before giving up.
    pub max_retries: usize,
    /// Whether "while spinning" also wraps push and pull.
    pub spinning_wraps_interactions: bool,
    pub situation: SituationConfig,
    pub oracle: OracleConfig,
    pub meta: MetaGrammarConfig,
    /// Program texts placed in the first registry slots (count toward
    /// `extra_adverbs`).
    pub pinned_adverbs: Vec<String>,
    /// The first split also labels the `split` field of example records.
    pub splits: Vec<NamedSplit>,
}

impl Default for ForgeConfig {
    fn default() -> Self {
        ForgeConfig {
            seed: 0,
            num_examples: 1000,
            extra_adverbs: 0,
            no_adverb_prob: 0.2,
            max_retries: 100,
            spinning_wraps_interactions: true,
            situation: SituationConfig::default(),
            oracle: OracleConfig::default(),
            meta: MetaGrammarConfig::default(),
            pinned_adverbs: Vec::new(),
            splits: vec![NamedSplit { name: "random".into(), spec: SplitSpec::Random { test_fraction: 0.1 } }],
        }
    }
}

impl ForgeConfig {
    pub fn from_toml(text: &str) -> Result<Self, ForgeError> {
        let cfg: ForgeConfig = toml::from_str(text).map_err(|e| ForgeError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ForgeError> {
        let bad = |m: String| Err(ForgeError::Config(m));
        if self.num_examples == 0 {
            return bad("num_examples must be at least 1".into());
        }
        if !(0.0..=1.0).contains(&self.no_adverb_prob) {
            return bad(format!("no_adverb_prob {} outside [0, 1]", self.no_adverb_prob));
        }
        if self.oracle.max_depth == 0 {
            return bad("max_depth must be at least 1".into());
        }
        self.meta.validate()?;
        let mut names = std::collections::HashSet::new();
        for s in &self.splits {
            if !names.insert(s.name.as_str()) {
                return bad(format!("duplicate split name `{}`", s.name));
            }
            match &s.spec {
                SplitSpec::Random { test_fraction } if !(*test_fraction > 0.0 && *test_fraction < 1.0) => {
                    return bad(format!("split `{}`: test_fraction must be in (0, 1)", s.name));
                }
                SplitSpec::KShotAdverb { k: 0, .. } => {
                    return bad(format!("split `{}`: k must be at least 1", s.name));
                }
                SplitSpec::TypeSubset { base, .. } if !names.contains(base.as_str()) || base == &s.name => {
                    return bad(format!("split `{}`: base `{base}` must be an earlier split", s.name));
                }
                SplitSpec::Predicate { filter } => {
                    super::splits::Filter::parse(filter).map_err(ForgeError::Config)?;
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn pinned_programs(&self) -> Result<Vec<AdverbProgram>, ForgeError> {
        self.pinned_adverbs
            .iter()
            .map(|t| parse_program(t).map_err(|e| ForgeError::Config(format!("pinned adverb: {e}"))))
            .collect()
    }

    pub fn lexicon(&self, registry: &Registry) -> Result<Lexicon, ForgeError> {
        Ok(Lexicon::with_builtins(builtin_adverbs_with(self.spinning_wraps_interactions), registry)?)
    }
}
