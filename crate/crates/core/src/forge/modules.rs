use serde::{Deserialize, Serialize};

use super::generate::Example;
use super::ForgeError;
use crate::gridworld::{ActionSymbol, Heading, Verb, WorldState};
use crate::meta::Lexicon;
use crate::oracle::{solve_traced, transform, OracleConfig, OracleError, Percept, Plan};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModuleKind {
    Perception,
    Navigation,
    Interaction,
    Transformation,
}

impl ModuleKind {
    pub const ALL: [ModuleKind; 4] =
        [ModuleKind::Perception, ModuleKind::Navigation, ModuleKind::Interaction, ModuleKind::Transformation];

    pub fn file_name(self) -> &'static str {
        match self {
            ModuleKind::Perception => "perception.ndrec",
            ModuleKind::Navigation => "navigation.ndrec",
            ModuleKind::Interaction => "interaction.ndrec",
            ModuleKind::Transformation => "transformation.ndrec",
        }
    }
}

/// Supervised input/target pair for one module, keyed by example index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleRecord<I, T> {
    pub index: usize,
    pub module: ModuleKind,
    pub inputs: I,
    pub target: T,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerceptionInputs {
    pub command: Vec<String>,
    pub situation: WorldState,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NavigationInputs {
    pub command: Vec<String>,
    pub percept: Percept,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InteractionInputs {
    pub command: Vec<String>,
    pub verb: Verb,
    pub percept: Percept,
    pub situation: WorldState,
    pub arrival_heading: Heading,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformationInputs {
    pub command: Vec<String>,
    pub adverb: Option<String>,
    pub plan: Plan,
    pub interactions: Vec<ActionSymbol>,
    pub start_heading: Heading,
}

pub type PerceptionRecord = ModuleRecord<PerceptionInputs, Percept>;
pub type NavigationRecord = ModuleRecord<NavigationInputs, Plan>;
pub type InteractionRecord = ModuleRecord<InteractionInputs, Vec<ActionSymbol>>;
pub type TransformationRecord = ModuleRecord<TransformationInputs, Vec<ActionSymbol>>;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ModuleDatasets {
    pub perception: Vec<PerceptionRecord>,
    pub navigation: Vec<NavigationRecord>,
    pub interaction: Vec<InteractionRecord>,
    pub transformation: Vec<TransformationRecord>,
}

/// Decomposes every example into the four modules' supervised records.
pub fn emit_module_datasets(
    examples: &[Example],
    lexicon: &Lexicon,
    cfg: &OracleConfig,
) -> Result<ModuleDatasets, ForgeError> {
    let mut out = ModuleDatasets::default();
    for ex in examples {
        let sol = solve_traced(&ex.command, &ex.world, lexicon, cfg)?;
        let command = ex.command.tokens();
        let index = ex.index;
        out.perception.push(ModuleRecord {
            index,
            module: ModuleKind::Perception,
            inputs: PerceptionInputs { command: command.clone(), situation: ex.world.clone() },
            target: sol.percept,
        });
        out.navigation.push(ModuleRecord {
            index,
            module: ModuleKind::Navigation,
            inputs: NavigationInputs { command: command.clone(), percept: sol.percept },
            target: sol.plan.clone(),
        });
        out.interaction.push(ModuleRecord {
            index,
            module: ModuleKind::Interaction,
            inputs: InteractionInputs {
                command: command.clone(),
                verb: ex.verb,
                percept: sol.percept,
                situation: ex.world.clone(),
                arrival_heading: sol.arrival_heading,
            },
            target: sol.interactions.clone(),
        });
        out.transformation.push(ModuleRecord {
            index,
            module: ModuleKind::Transformation,
            inputs: TransformationInputs {
                command,
                adverb: ex.command.adverb_surface(),
                plan: sol.plan,
                interactions: sol.interactions,
                start_heading: sol.percept.agent_heading,
            },
            target: sol.target,
        });
    }
    Ok(out)
}

/// Chains the four module targets of one example back into an end-to-end
/// action sequence. Fails if the records disagree with each other.
pub fn recompose(
    perception: &PerceptionRecord,
    navigation: &NavigationRecord,
    interaction: &InteractionRecord,
    transformation: &TransformationRecord,
    lexicon: &Lexicon,
    cfg: &OracleConfig,
) -> Result<Vec<ActionSymbol>, ForgeError> {
    let mismatch = |what: &str| ForgeError::Recomposition { index: perception.index, what: what.to_string() };
    let idx = perception.index;
    if [navigation.index, interaction.index, transformation.index].iter().any(|&i| i != idx) {
        return Err(mismatch("record indices"));
    }
    if navigation.inputs.percept != perception.target || interaction.inputs.percept != perception.target {
        return Err(mismatch("percept"));
    }
    let adverb = match &transformation.inputs.adverb {
        Some(s) => Some(&lexicon.lookup(s).ok_or_else(|| OracleError::UnknownAdverb(s.clone()))?.program),
        None => None,
    };
    Ok(transform(&navigation.target, &interaction.target, adverb, perception.target.agent_heading, cfg.max_depth)
        .map_err(OracleError::from)?)
}
