use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::classify::classify_program;
use super::names::NameGenerator;
use super::sample::sample_program;
use super::types::{AdverbType, MetaGrammarConfig};
use super::MetaError;
use crate::dsl::{builtin_adverbs_with, parse_program, programs_equal, serialize_program, AdverbProgram};
use crate::rng::derive_rng;

/// A named adverb: its surface tokens and the program behind them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexiconEntry {
    pub surface: Vec<String>,
    pub program: AdverbProgram,
    pub adverb_type: AdverbType,
}

impl LexiconEntry {
    pub fn new(program: AdverbProgram) -> Result<Self, MetaError> {
        let adverb_type = classify_program(&program)?;
        Ok(LexiconEntry { surface: program.name().to_vec(), program, adverb_type })
    }

    pub fn surface_str(&self) -> String {
        self.surface.join(" ")
    }
}

/// Extra adverbs in sampling-slot order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Registry {
    pub entries: Vec<LexiconEntry>,
}

impl Registry {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Programs as `---`-separated program texts, one per slot.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (slot, e) in self.entries.iter().enumerate() {
            if slot > 0 {
                out.push_str("---\n");
            }
            out.push_str(&format!("# slot {slot}\n"));
            out.push_str(&serialize_program(&e.program));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Registry, MetaError> {
        let mut entries = Vec::new();
        let mut block = String::new();
        let mut offset = 0;
        let mut flush = |block: &mut String, offset: usize| -> Result<(), MetaError> {
            if block.lines().any(|l| !l.split('#').next().unwrap_or("").trim().is_empty()) {
                let program =
                    parse_program(block).map_err(|e| MetaError::RegistryFile { line_offset: offset, source: e })?;
                entries.push(LexiconEntry::new(program)?);
            }
            block.clear();
            Ok(())
        };
        for (i, line) in text.lines().enumerate() {
            if line.trim() == "---" {
                flush(&mut block, offset)?;
                offset = i + 1;
            } else {
                block.push_str(line);
                block.push('\n');
            }
        }
        flush(&mut block, offset)?;
        let registry = Registry { entries };
        registry.check_unique()?;
        Ok(registry)
    }

    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_text().as_bytes()))
    }

    /// Names and programs are distinct from each other and from the builtins.
    pub fn check_unique(&self) -> Result<(), MetaError> {
        let builtins = builtin_adverbs_with(true);
        let mut names = NameGenerator::default();
        for (i, e) in self.entries.iter().enumerate() {
            if !names.reserve(&e.surface_str()) {
                return Err(MetaError::DuplicateAdverb(e.surface_str()));
            }
            let clash = builtins.iter().any(|b| programs_equal(b, &e.program))
                || self.entries[..i].iter().any(|o| programs_equal(&o.program, &e.program));
            if clash {
                return Err(MetaError::DuplicateAdverb(e.surface_str()));
            }
        }
        Ok(())
    }
}

/// Samples `x` extra adverbs. See [`sample_registry_with`].
pub fn sample_registry(seed: u64, x: usize, cfg: &MetaGrammarConfig) -> Result<Registry, MetaError> {
    sample_registry_with(seed, x, cfg, &[])
}

/// Samples a registry of `x` adverbs whose first slots are `pinned`.
///
/// Slot `i` draws its type from stream `(seed, i)` and each attempt from
/// `(seed, i, attempt)`. A program equal to a builtin or an earlier entry is
/// rejected; `cfg.max_rejects` consecutive rejections abort.
pub fn sample_registry_with(
    seed: u64,
    x: usize,
    cfg: &MetaGrammarConfig,
    pinned: &[AdverbProgram],
) -> Result<Registry, MetaError> {
    cfg.validate()?;
    if pinned.len() > x {
        return Err(MetaError::InvalidConfig(format!("{} pinned adverbs exceed the {x} requested", pinned.len())));
    }
    let builtins = builtin_adverbs_with(true);
    let mut names = NameGenerator::default();
    let mut entries: Vec<LexiconEntry> = Vec::with_capacity(x);
    let taken = |entries: &[LexiconEntry], p: &AdverbProgram| {
        builtins.iter().any(|b| programs_equal(b, p)) || entries.iter().any(|e| programs_equal(&e.program, p))
    };

    for p in pinned {
        if taken(&entries, p) || !names.reserve(&p.surface()) {
            return Err(MetaError::DuplicateAdverb(p.surface()));
        }
        entries.push(LexiconEntry::new(p.clone())?);
    }

    for slot in entries.len()..x {
        let ty = cfg.sample_type(&mut derive_rng(seed, "registry-type", &[slot as u64]));
        let mut rejects = 0;
        let program = loop {
            let mut rng = derive_rng(seed, "registry-program", &[slot as u64, rejects as u64]);
            let p = sample_program(&mut rng, ty, cfg)?;
            if !taken(&entries, &p) {
                break p;
            }
            rejects += 1;
            if rejects >= cfg.max_rejects {
                return Err(MetaError::RejectBudgetExceeded { slot, rejects });
            }
        };
        let name = names.generate(&mut derive_rng(seed, "registry-name", &[slot as u64]), program.mode());
        let program = program.with_name(name);
        entries.push(LexiconEntry { surface: program.name().to_vec(), program, adverb_type: ty });
    }
    Ok(Registry { entries })
}

/// Builtins plus registry entries, looked up by surface.
#[derive(Debug, Clone)]
pub struct Lexicon {
    entries: Vec<LexiconEntry>,
    index: BTreeMap<String, usize>,
    builtin_count: usize,
}

impl Lexicon {
    pub fn new(registry: &Registry) -> Result<Self, MetaError> {
        Self::with_builtins(builtin_adverbs_with(true), registry)
    }

    pub fn with_builtins(builtins: Vec<AdverbProgram>, registry: &Registry) -> Result<Self, MetaError> {
        let builtin_count = builtins.len();
        let mut entries = builtins.into_iter().map(LexiconEntry::new).collect::<Result<Vec<_>, _>>()?;
        entries.extend(registry.entries.iter().cloned());
        let mut index = BTreeMap::new();
        for (i, e) in entries.iter().enumerate() {
            if index.insert(e.surface_str(), i).is_some() {
                return Err(MetaError::DuplicateAdverb(e.surface_str()));
            }
        }
        Ok(Lexicon { entries, index, builtin_count })
    }

    pub fn lookup(&self, surface: &str) -> Option<&LexiconEntry> {
        self.index.get(surface).map(|&i| &self.entries[i])
    }

    /// All entries, builtins first.
    pub fn entries(&self) -> &[LexiconEntry] {
        &self.entries
    }

    pub fn is_builtin(&self, surface: &str) -> bool {
        self.index.get(surface).is_some_and(|&i| i < self.builtin_count)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Type counts of a registry, for reporting.
pub fn type_histogram(registry: &Registry) -> BTreeMap<AdverbType, usize> {
    let mut h = BTreeMap::new();
    for e in &registry.entries {
        *h.entry(e.adverb_type).or_insert(0) += 1;
    }
    h
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegistrySummary {
    pub digest: String,
    pub count: usize,
    pub types: BTreeMap<AdverbType, usize>,
}

impl From<&Registry> for RegistrySummary {
    fn from(r: &Registry) -> Self {
        RegistrySummary { digest: r.digest(), count: r.len(), types: type_histogram(r) }
    }
}
