use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::ForgeConfig;
use super::ForgeError;
use crate::gridworld::{execute_with, goal_satisfied, sample_situation, ActionSymbol, Command, Verb, WorldState};
use crate::meta::{AdverbType, Lexicon};
use crate::oracle::solve;
use crate::rng::derive_rng;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AdverbMeta {
    pub surface: String,
    #[serde(rename = "type")]
    pub adverb_type: AdverbType,
}

/// One dataset row: a command in a world with its ground-truth actions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Example {
    pub index: usize,
    pub command: Command,
    pub world: WorldState,
    pub target: Vec<ActionSymbol>,
    pub adverb: Option<AdverbMeta>,
    pub verb: Verb,
}

/// Builds example `index`: verb and adverb come from stream
/// `(seed, "example", index)`, situation attempt `a` from
/// `(seed, "situation", index, a)`.
pub fn generate_example(cfg: &ForgeConfig, lexicon: &Lexicon, index: usize) -> Result<Example, ForgeError> {
    let mut rng = derive_rng(cfg.seed, "example", &[index as u64]);
    let verb = *Verb::ALL.choose(&mut rng).expect("three verbs");
    let adverb = if rng.gen_bool(cfg.no_adverb_prob) { None } else { lexicon.entries().choose(&mut rng) };

    for attempt in 0..cfg.max_retries {
        let mut srng = derive_rng(cfg.seed, "situation", &[index as u64, attempt as u64]);
        let (world, phrase) = sample_situation(&mut srng, &cfg.situation)?;
        let command = Command::new(verb, phrase, adverb.map(|e| e.surface.clone()));
        let target = solve(&command, &world, lexicon, &cfg.oracle)?;
        let Ok(trajectory) = execute_with(&world, &target, &cfg.oracle.physics) else { continue };
        if !goal_satisfied(verb, &trajectory) {
            continue;
        }
        return Ok(Example {
            index,
            command,
            world,
            target,
            adverb: adverb.map(|e| AdverbMeta { surface: e.surface_str(), adverb_type: e.adverb_type }),
            verb,
        });
    }
    Err(ForgeError::RetryExhausted {
        index,
        adverb: adverb.map(|e| e.surface_str()).unwrap_or_else(|| "<none>".into()),
        attempts: cfg.max_retries,
    })
}

/// Generates all examples of `cfg`, in index order, on `jobs` threads
/// (0 = one per core). Output does not depend on `jobs`.
pub fn generate_examples(cfg: &ForgeConfig, lexicon: &Lexicon, jobs: usize) -> Result<Vec<Example>, ForgeError> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| ForgeError::Config(format!("thread pool: {e}")))?;
    pool.install(|| (0..cfg.num_examples).into_par_iter().map(|i| generate_example(cfg, lexicon, i)).collect())
}
