use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::config::{NamedSplit, SplitSpec};
use super::generate::Example;
use super::ForgeError;
use crate::gridworld::{Color, Shape, SizeAdjective, Verb};
use crate::meta::{AdverbType, Lexicon};
use crate::rng::derive_rng;

/// Train and test example indices of one split, both ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitPartition {
    pub name: String,
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

impl SplitPartition {
    pub fn label(&self, index: usize) -> Option<&'static str> {
        if self.train.binary_search(&index).is_ok() {
            Some("train")
        } else if self.test.binary_search(&index).is_ok() {
            Some("test")
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Clause {
    Verb(Verb),
    Adverb(String),
    NoAdverb,
    Type(AdverbType),
    Color(Color),
    Shape(Shape),
    Size(SizeAdjective),
}

/// Conjunction of `key:value` clauses joined by `&`; `!` negates a clause.
///
/// Keys: `verb`, `adverb` (use `_` for spaces), `type`, `color`, `shape`,
/// `size`, and the bare `no_adverb`. Example: `color:yellow&shape:square`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filter {
    clauses: Vec<(bool, Clause)>,
}

impl Filter {
    pub fn parse(text: &str) -> Result<Filter, String> {
        let mut clauses = Vec::new();
        for raw in text.split('&').map(str::trim) {
            let (negated, body) = match raw.strip_prefix('!') {
                Some(b) => (true, b.trim()),
                None => (false, raw),
            };
            let clause = if body == "no_adverb" {
                Clause::NoAdverb
            } else {
                let (k, v) = body.split_once(':').ok_or_else(|| format!("filter clause `{raw}` is not `key:value`"))?;
                let v = v.trim();
                match k.trim() {
                    "verb" => Clause::Verb(v.parse()?),
                    "adverb" => Clause::Adverb(v.replace('_', " ")),
                    "type" => Clause::Type(v.parse()?),
                    "color" => Clause::Color(v.parse()?),
                    "shape" => Clause::Shape(v.parse()?),
                    "size" => Clause::Size(v.parse()?),
                    other => return Err(format!("unknown filter key `{other}`")),
                }
            };
            clauses.push((negated, clause));
        }
        Ok(Filter { clauses })
    }

    pub fn matches(&self, ex: &Example) -> bool {
        self.clauses.iter().all(|(neg, c)| {
            let hit = match c {
                Clause::Verb(v) => ex.verb == *v,
                Clause::Adverb(s) => ex.adverb.as_ref().is_some_and(|a| &a.surface == s),
                Clause::NoAdverb => ex.adverb.is_none(),
                Clause::Type(t) => ex.adverb.as_ref().is_some_and(|a| a.adverb_type == *t),
                Clause::Color(col) => ex.command.object.color == Some(*col),
                Clause::Shape(s) => ex.command.object.shape == *s,
                Clause::Size(s) => ex.command.object.size_adj == Some(*s),
            };
            hit != *neg
        })
    }
}

fn has_adverb(ex: &Example, surface: &str) -> bool {
    ex.adverb.as_ref().is_some_and(|a| a.surface == surface)
}

fn partition(name: &str, examples: &[Example], in_test: impl Fn(&Example) -> bool) -> SplitPartition {
    let (test, train): (Vec<&Example>, Vec<&Example>) = examples.iter().partition(|e| in_test(e));
    SplitPartition {
        name: name.to_string(),
        train: train.iter().map(|e| e.index).collect(),
        test: test.iter().map(|e| e.index).collect(),
    }
}

fn build_one(
    split: &NamedSplit,
    examples: &[Example],
    lexicon: &Lexicon,
    built: &[SplitPartition],
    seed: u64,
    ordinal: usize,
) -> Result<SplitPartition, ForgeError> {
    let mut rng = derive_rng(seed, "split", &[ordinal as u64]);
    let name = split.name.as_str();
    let insufficient =
        |needed: usize, found: usize| ForgeError::InsufficientExamples { split: name.to_string(), needed, found };
    let mut out = match &split.spec {
        SplitSpec::Random { test_fraction } => {
            let mut order: Vec<usize> = examples.iter().map(|e| e.index).collect();
            order.shuffle(&mut rng);
            let n_test = ((order.len() as f64) * test_fraction).round() as usize;
            let (test, train) = order.split_at(n_test.min(order.len()));
            SplitPartition { name: name.into(), train: train.to_vec(), test: test.to_vec() }
        }
        SplitSpec::KShotAdverb { surface, k } => {
            let mut matches: Vec<usize> = examples.iter().filter(|e| has_adverb(e, surface)).map(|e| e.index).collect();
            if matches.len() <= *k {
                return Err(insufficient(k + 1, matches.len()));
            }
            matches.shuffle(&mut rng);
            let shots = &matches[..*k];
            let mut p = partition(name, examples, |e| has_adverb(e, surface));
            p.train.extend_from_slice(shots);
            p.test.retain(|i| !shots.contains(i));
            p
        }
        SplitSpec::VerbAdverbHoldout { verb, surface } => {
            let p = partition(name, examples, |e| e.verb == *verb && has_adverb(e, surface));
            if p.test.is_empty() {
                return Err(insufficient(1, 0));
            }
            p
        }
        SplitSpec::Predicate { filter } => {
            let f = Filter::parse(filter).map_err(ForgeError::Config)?;
            let p = partition(name, examples, |e| f.matches(e));
            if p.test.is_empty() {
                return Err(insufficient(1, 0));
            }
            p
        }
        SplitSpec::TypeSubset { base, types, surfaces } => {
            let base = built.iter().find(|b| &b.name == base).ok_or_else(|| ForgeError::UnknownSplit(base.clone()))?;
            let keep = |e: &Example| match &e.adverb {
                None => true,
                Some(a) if lexicon.is_builtin(&a.surface) => true,
                Some(a) => types.contains(&a.adverb_type) || surfaces.contains(&a.surface),
            };
            let train = base.train.iter().copied().filter(|&i| keep(&examples[i])).collect();
            SplitPartition { name: name.into(), train, test: base.test.clone() }
        }
    };
    out.train.sort_unstable();
    out.test.sort_unstable();
    Ok(out)
}

/// Builds every split in order; split `i` draws from stream `(seed, i)`.
///
/// Examples must be indexed by position (`examples[i].index == i`).
pub fn build_splits(
    examples: &[Example],
    specs: &[NamedSplit],
    lexicon: &Lexicon,
    seed: u64,
) -> Result<Vec<SplitPartition>, ForgeError> {
    debug_assert!(examples.iter().enumerate().all(|(i, e)| e.index == i));
    let mut built = Vec::with_capacity(specs.len());
    for (ordinal, spec) in specs.iter().enumerate() {
        let p = build_one(spec, examples, lexicon, &built, seed, ordinal)?;
        built.push(p);
    }
    Ok(built)
}
