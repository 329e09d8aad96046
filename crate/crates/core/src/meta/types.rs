use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Taxonomy of manners by how they change movement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AdverbType {
    /// Allocentric; extra turns within cells, same cell path.
    #[serde(rename = "spinning_type")]
    Spinning,
    /// Egocentric; extra turns within cells, same cell path.
    #[serde(rename = "cautiously_type")]
    Cautiously,
    /// Allocentric; a different path of the same length.
    #[serde(rename = "zigzag_type")]
    Zigzag,
    /// Allocentric; same endpoint reached by a longer path.
    #[serde(rename = "detour_type")]
    Detour,
}

impl AdverbType {
    pub const ALL: [AdverbType; 4] =
        [AdverbType::Spinning, AdverbType::Cautiously, AdverbType::Zigzag, AdverbType::Detour];
    pub const SAMPLED: [AdverbType; 3] = [AdverbType::Spinning, AdverbType::Cautiously, AdverbType::Detour];

    pub fn as_str(self) -> &'static str {
        match self {
            AdverbType::Spinning => "spinning_type",
            AdverbType::Cautiously => "cautiously_type",
            AdverbType::Zigzag => "zigzag_type",
            AdverbType::Detour => "detour_type",
        }
    }
}

impl fmt::Display for AdverbType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AdverbType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let stem = s.strip_suffix("_type").unwrap_or(s);
        match stem {
            "spinning" => Ok(AdverbType::Spinning),
            "cautiously" => Ok(AdverbType::Cautiously),
            "zigzag" => Ok(AdverbType::Zigzag),
            "detour" => Ok(AdverbType::Detour),
            _ => Err(format!("unknown adverb type `{s}`")),
        }
    }
}

/// Relative sampling weights per type. Zigzag cannot be sampled.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TypeWeights {
    pub spinning: f64,
    pub cautiously: f64,
    pub detour: f64,
    pub zigzag: f64,
}

impl Default for TypeWeights {
    fn default() -> Self {
        TypeWeights { spinning: 0.40, cautiously: 0.30, detour: 0.30, zigzag: 0.0 }
    }
}

impl TypeWeights {
    pub fn get(&self, ty: AdverbType) -> f64 {
        match ty {
            AdverbType::Spinning => self.spinning,
            AdverbType::Cautiously => self.cautiously,
            AdverbType::Detour => self.detour,
            AdverbType::Zigzag => self.zigzag,
        }
    }

    /// Parses `spinning=0.5,cautiously=0.2,detour=0.3`; missing types get 0.
    pub fn parse(spec: &str) -> Result<Self, String> {
        let mut w = TypeWeights { spinning: 0.0, cautiously: 0.0, detour: 0.0, zigzag: 0.0 };
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| format!("expected `type=weight`, got `{part}`"))?;
            let v: f64 = v.trim().parse().map_err(|_| format!("invalid weight `{v}`"))?;
            match k.trim().parse::<AdverbType>()? {
                AdverbType::Spinning => w.spinning = v,
                AdverbType::Cautiously => w.cautiously = v,
                AdverbType::Detour => w.detour = v,
                AdverbType::Zigzag => w.zigzag = v,
            }
        }
        Ok(w)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MetaGrammarConfig {
    pub type_weights: TypeWeights,
    pub prefix_len_min: usize,
    pub prefix_len_max: usize,
    pub detour_rhs_max: usize,
    pub max_rejects: usize,
}

impl Default for MetaGrammarConfig {
    fn default() -> Self {
        MetaGrammarConfig {
            type_weights: TypeWeights::default(),
            prefix_len_min: 2,
            prefix_len_max: 8,
            detour_rhs_max: 5,
            max_rejects: 1000,
        }
    }
}
