use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::forge::{Dataset, DatasetManifest};
use crate::meta::AdverbType;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthStats {
    pub min: usize,
    pub max: usize,
    /// Sum of all lengths; the mean is `total / count`.
    pub total: usize,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetStats {
    pub num_examples: usize,
    pub registry_size: usize,
    pub registry_types: BTreeMap<AdverbType, usize>,
    pub adverb_surfaces: usize,
    pub verbs: BTreeMap<String, usize>,
    pub adverb_types: BTreeMap<String, usize>,
    pub no_adverb: usize,
    pub target_length: LengthStats,
    pub splits: BTreeMap<String, (usize, usize)>,
}

pub fn dataset_stats(ds: &Dataset, manifest: &DatasetManifest) -> DatasetStats {
    let mut adverb_types = BTreeMap::new();
    for ex in &ds.examples {
        if let Some(a) = &ex.adverb {
            *adverb_types.entry(a.adverb_type.as_str().to_string()).or_insert(0) += 1;
        }
    }
    let lens = ds.examples.iter().map(|e| e.target.len());
    let target_length = LengthStats {
        min: lens.clone().min().unwrap_or(0),
        max: lens.clone().max().unwrap_or(0),
        total: lens.sum(),
        count: ds.examples.len(),
    };
    DatasetStats {
        num_examples: ds.examples.len(),
        registry_size: manifest.registry.count,
        registry_types: manifest.registry.types.clone(),
        adverb_surfaces: manifest.adverbs.len(),
        verbs: manifest.verbs.clone(),
        adverb_types,
        no_adverb: manifest.no_adverb,
        target_length,
        splits: ds.splits.iter().map(|s| (s.name.clone(), (s.train.len(), s.test.len()))).collect(),
    }
}

impl fmt::Display for DatasetStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "examples          {}", self.num_examples)?;
        writeln!(f, "extra adverbs     {}", self.registry_size)?;
        for (t, n) in &self.registry_types {
            writeln!(f, "  {t:<16}{n}")?;
        }
        writeln!(f, "adverb surfaces   {}", self.adverb_surfaces)?;
        writeln!(f, "no-adverb         {}", self.no_adverb)?;
        writeln!(f, "verbs")?;
        for (v, n) in &self.verbs {
            writeln!(f, "  {v:<16}{n}")?;
        }
        writeln!(f, "adverb types")?;
        for (t, n) in &self.adverb_types {
            writeln!(f, "  {t:<16}{n}")?;
        }
        let l = &self.target_length;
        let mean = l.total.checked_div(l.count).unwrap_or(0);
        writeln!(f, "target length     min {} mean {} max {}", l.min, mean, l.max)?;
        writeln!(f, "splits (train/test)")?;
        for (s, (tr, te)) in &self.splits {
            writeln!(f, "  {s:<32}{tr}/{te}")?;
        }
        Ok(())
    }
}
