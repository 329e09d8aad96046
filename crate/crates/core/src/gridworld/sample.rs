use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::action::Heading;
use super::command::{resolve_target, NounPhrase};
use super::world::{Color, GridObject, Position, Shape, SizeAdjective, WorldState, MAX_SIZE, MIN_SIZE};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SituationConfig {
    pub grid_size: usize,
    pub min_distractors: usize,
    pub max_distractors: usize,
    /// Allow the agent to start on the target cell.
    pub allow_same_cell: bool,
    pub max_attempts: usize,
}

impl Default for SituationConfig {
    fn default() -> Self {
        SituationConfig {
            grid_size: 6,
            min_distractors: 1,
            max_distractors: 5,
            allow_same_cell: false,
            max_attempts: 200,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SampleError {
    #[error("grid size {0} is below the minimum of 2")]
    GridTooSmall(usize),
    #[error("invalid distractor range {min}..={max}")]
    BadDistractorRange { min: usize, max: usize },
    #[error("no uniquely describable target after {0} attempts")]
    ExhaustedRetries(usize),
}

/// Cells strictly between `from` and `to` on the vertical-then-horizontal
/// Manhattan path, plus `from` itself.
fn canonical_path_cells(from: Position, to: Position) -> Vec<Position> {
    let mut cells = vec![from];
    let mut cur = from;
    while cur.row != to.row {
        cur.row = if to.row < cur.row { cur.row - 1 } else { cur.row + 1 };
        cells.push(cur);
    }
    while cur.col != to.col {
        cur.col = if to.col < cur.col { cur.col - 1 } else { cur.col + 1 };
        cells.push(cur);
    }
    cells.pop();
    cells
}

fn random_object<R: Rng + ?Sized>(rng: &mut R, position: Position) -> GridObject {
    GridObject {
        shape: *Shape::ALL.choose(rng).expect("nonempty"),
        color: *Color::ALL.choose(rng).expect("nonempty"),
        size: rng.gen_range(MIN_SIZE..=MAX_SIZE),
        position,
    }
}

/// Shortest noun phrases that pick out `world.target_index` uniquely.
///
/// Size adjectives are only offered when at least two objects share the
/// shape (and color, if mentioned).
pub fn minimal_descriptions(world: &WorldState) -> Vec<NounPhrase> {
    let target = world.target();
    let mut found: Vec<NounPhrase> = Vec::new();
    for size_adj in [None, Some(SizeAdjective::Small), Some(SizeAdjective::Big)] {
        for color in [None, Some(target.color)] {
            let phrase = NounPhrase { size_adj, color, shape: target.shape };
            if size_adj.is_some() {
                let group = world
                    .objects
                    .iter()
                    .filter(|o| o.shape == target.shape && color.is_none_or(|c| o.color == c))
                    .count();
                if group < 2 {
                    continue;
                }
            }
            if resolve_target(&phrase, world) == Ok(world.target_index) {
                found.push(phrase);
            }
        }
    }
    let fewest = found.iter().map(NounPhrase::modifiers).min();
    found.retain(|p| Some(p.modifiers()) == fewest);
    found
}

/// Samples a world and a noun phrase that resolves to its target.
///
/// Distractors never sit on the agent's canonical path to the target, so
/// navigation never has to route around objects.
pub fn sample_situation<R: Rng + ?Sized>(
    rng: &mut R,
    cfg: &SituationConfig,
) -> Result<(WorldState, NounPhrase), SampleError> {
    let n = cfg.grid_size;
    if n < 2 {
        return Err(SampleError::GridTooSmall(n));
    }
    if cfg.min_distractors > cfg.max_distractors || cfg.max_distractors + 2 > n * n {
        return Err(SampleError::BadDistractorRange { min: cfg.min_distractors, max: cfg.max_distractors });
    }

    for _ in 0..cfg.max_attempts {
        let target_pos = Position::new(rng.gen_range(0..n), rng.gen_range(0..n));
        let agent_pos = loop {
            let p = Position::new(rng.gen_range(0..n), rng.gen_range(0..n));
            if cfg.allow_same_cell || p != target_pos {
                break p;
            }
        };
        let heading = *Heading::ALL.choose(rng).expect("nonempty");
        let mut objects = vec![random_object(rng, target_pos)];

        let path = canonical_path_cells(agent_pos, target_pos);
        let mut free: Vec<Position> = (0..n)
            .flat_map(|r| (0..n).map(move |c| Position::new(r, c)))
            .filter(|p| *p != target_pos && !path.contains(p))
            .collect();
        let count = rng.gen_range(cfg.min_distractors..=cfg.max_distractors).min(free.len());
        free.shuffle(rng);
        for &p in &free[..count] {
            objects.push(random_object(rng, p));
        }

        let world = WorldState::new(n, agent_pos, heading, objects, 0).expect("sampler keeps worlds valid");
        let options = minimal_descriptions(&world);
        if let Some(phrase) = options.choose(rng) {
            return Ok((world, phrase.clone()));
        }
    }
    Err(SampleError::ExhaustedRetries(cfg.max_attempts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::derive_rng;

    #[test]
    fn zero_distractors_gives_bare_shape() {
        let cfg = SituationConfig { min_distractors: 0, max_distractors: 0, ..Default::default() };
        let (w, phrase) = sample_situation(&mut derive_rng(11, "t", &[]), &cfg).unwrap();
        assert_eq!(w.objects.len(), 1);
        assert_eq!(phrase, NounPhrase::shape(w.objects[0].shape));
        assert_ne!(w.agent_position, w.objects[0].position);
    }

    #[test]
    fn deterministic_under_seed() {
        let cfg = SituationConfig::default();
        let a = sample_situation(&mut derive_rng(5, "t", &[1]), &cfg).unwrap();
        let b = sample_situation(&mut derive_rng(5, "t", &[1]), &cfg).unwrap();
        assert_eq!(serde_json::to_string(&a.0).unwrap(), serde_json::to_string(&b.0).unwrap());
        assert_eq!(a.1, b.1);
    }

    #[test]
    fn phrases_resolve_to_target_over_many_samples() {
        let cfg = SituationConfig { min_distractors: 3, max_distractors: 3, ..Default::default() };
        for i in 0..1000 {
            let (w, phrase) = sample_situation(&mut derive_rng(9, "t", &[i]), &cfg).unwrap();
            assert_eq!(w.objects.len(), 4);
            assert_eq!(resolve_target(&phrase, &w), Ok(w.target_index));
            let path = canonical_path_cells(w.agent_position, w.target().position);
            assert!(w.objects[1..].iter().all(|o| !path.contains(&o.position)));
        }
    }

    #[test]
    fn impossible_config_errors() {
        let cfg = SituationConfig { grid_size: 1, ..Default::default() };
        assert_eq!(sample_situation(&mut derive_rng(0, "t", &[]), &cfg), Err(SampleError::GridTooSmall(1)));
        let cfg = SituationConfig { grid_size: 2, min_distractors: 3, max_distractors: 3, ..Default::default() };
        assert!(matches!(
            sample_situation(&mut derive_rng(0, "t", &[]), &cfg),
            Err(SampleError::BadDistractorRange { .. })
        ));
        let cfg = SituationConfig {
            grid_size: 2,
            min_distractors: 2,
            max_distractors: 2,
            max_attempts: 0,
            ..Default::default()
        };
        assert_eq!(sample_situation(&mut derive_rng(0, "t", &[]), &cfg), Err(SampleError::ExhaustedRetries(0)));
    }
}
