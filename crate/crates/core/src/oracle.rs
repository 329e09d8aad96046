//! Rule-based perception, navigation, interaction and transformation
//! modules, and their composition into a ground-truth solver.

use serde::{Deserialize, Serialize};

use crate::dsl::{apply_program, ground, ground_with_heading, AdverbProgram, DslError, Mode, PlanShape};
use crate::gridworld::{
    resolve_target, ActionSymbol, Command, CommandError, Heading, Physics, Position, Verb, WorldState,
};
use crate::meta::Lexicon;

pub const DEFAULT_MAX_DEPTH: u32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Percept {
    pub agent_position: Position,
    pub agent_heading: Heading,
    pub target_position: Position,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Plan {
    pub mode: Mode,
    pub symbols: Vec<ActionSymbol>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error(transparent)]
    Command(#[from] CommandError),
    #[error("unknown adverb `{0}`")]
    UnknownAdverb(String),
    #[error(transparent)]
    Dsl(#[from] DslError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OracleConfig {
    pub physics: Physics,
    pub max_depth: u32,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { physics: Physics::default(), max_depth: DEFAULT_MAX_DEPTH }
    }
}

pub fn perceive(command: &Command, world: &WorldState) -> Result<Percept, CommandError> {
    let target = resolve_target(&command.object, world)?;
    Ok(Percept {
        agent_position: world.agent_position,
        agent_heading: world.agent_heading,
        target_position: world.objects[target].position,
    })
}

fn axis_moves(percept: &Percept) -> (Vec<ActionSymbol>, Vec<ActionSymbol>) {
    let (a, t) = (percept.agent_position, percept.target_position);
    let vertical = if t.row < a.row { ActionSymbol::North } else { ActionSymbol::South };
    let horizontal = if t.col < a.col { ActionSymbol::West } else { ActionSymbol::East };
    (vec![vertical; a.row.abs_diff(t.row)], vec![horizontal; a.col.abs_diff(t.col)])
}

/// All vertical moves, then all horizontal moves.
pub fn canonical_plan(percept: &Percept) -> Vec<ActionSymbol> {
    let (mut v, h) = axis_moves(percept);
    v.extend(h);
    v
}

/// Alternates vertical and horizontal moves, vertical first, until one axis
/// runs out; the rest of the other axis follows.
pub fn zigzag_plan(percept: &Percept) -> Vec<ActionSymbol> {
    let (v, h) = axis_moves(percept);
    let mut out = Vec::with_capacity(v.len() + h.len());
    let (mut vi, mut hi) = (v.into_iter(), h.into_iter());
    loop {
        match (vi.next(), hi.next()) {
            (None, None) => break,
            (a, b) => out.extend(a.into_iter().chain(b)),
        }
    }
    out
}

/// Allocentric plan when the adverb is allocentric, egocentric otherwise.
pub fn plan_navigation(percept: &Percept, adverb: Option<&AdverbProgram>) -> Plan {
    match adverb {
        Some(p) if p.mode() == Mode::Allocentric => {
            let symbols = match p.plan_shape() {
                PlanShape::Zigzag => zigzag_plan(percept),
                PlanShape::Canonical => canonical_plan(percept),
            };
            Plan { mode: Mode::Allocentric, symbols }
        }
        _ => Plan { mode: Mode::Egocentric, symbols: ground(&canonical_plan(percept), percept.agent_heading) },
    }
}

/// Pushes or pulls the target until it meets a wall or another object.
///
/// Heavy objects take two actions per cell. Walking needs no interaction.
pub fn plan_interaction(
    percept: &Percept,
    world: &WorldState,
    verb: Verb,
    arrival_heading: Heading,
    physics: &Physics,
) -> Vec<ActionSymbol> {
    let (symbol, dir) = match verb {
        Verb::Walk => return Vec::new(),
        Verb::Push => (ActionSymbol::Push, arrival_heading),
        Verb::Pull => (ActionSymbol::Pull, arrival_heading.opposite()),
    };
    let Some(target) = world.object_at(percept.target_position) else { return Vec::new() };
    let cells = world.free_run(percept.target_position, dir, target);
    vec![symbol; cells * physics.actions_per_cell(&world.objects[target])]
}

/// Heading in which the agent reaches the target: the heading after grounding
/// the (transformed) plan.
pub fn arrival_heading(
    plan: &Plan,
    adverb: Option<&AdverbProgram>,
    start: Heading,
    max_depth: u32,
) -> Result<Heading, DslError> {
    let symbols = match adverb {
        Some(p) => apply_program(p, &plan.symbols, max_depth)?,
        None => plan.symbols.clone(),
    };
    Ok(ground_with_heading(&symbols, start).1)
}

/// Rewrites plan ++ interactions with the adverb's program and grounds the
/// result to egocentric primitives.
pub fn transform(
    plan: &Plan,
    interactions: &[ActionSymbol],
    adverb: Option<&AdverbProgram>,
    start: Heading,
    max_depth: u32,
) -> Result<Vec<ActionSymbol>, DslError> {
    let mut seq = plan.symbols.clone();
    seq.extend_from_slice(interactions);
    match adverb {
        Some(p) => Ok(ground(&apply_program(p, &seq, max_depth)?, start)),
        None if plan.mode == Mode::Egocentric => Ok(seq),
        None => Ok(ground(&seq, start)),
    }
}

/// Every intermediate output of one solver run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub percept: Percept,
    pub plan: Plan,
    pub arrival_heading: Heading,
    pub interactions: Vec<ActionSymbol>,
    pub target: Vec<ActionSymbol>,
}

pub fn solve_traced(
    command: &Command,
    world: &WorldState,
    lexicon: &Lexicon,
    cfg: &OracleConfig,
) -> Result<Solution, OracleError> {
    let adverb = match command.adverb_surface() {
        Some(s) => Some(&lexicon.lookup(&s).ok_or(OracleError::UnknownAdverb(s))?.program),
        None => None,
    };
    let percept = perceive(command, world)?;
    let plan = plan_navigation(&percept, adverb);
    let arrival = arrival_heading(&plan, adverb, percept.agent_heading, cfg.max_depth)?;
    let interactions = plan_interaction(&percept, world, command.verb, arrival, &cfg.physics);
    let target = transform(&plan, &interactions, adverb, percept.agent_heading, cfg.max_depth)?;
    Ok(Solution { percept, plan, arrival_heading: arrival, interactions, target })
}

/// Ground-truth egocentric action sequence for `command` in `world`.
pub fn solve(
    command: &Command,
    world: &WorldState,
    lexicon: &Lexicon,
    cfg: &OracleConfig,
) -> Result<Vec<ActionSymbol>, OracleError> {
    solve_traced(command, world, lexicon, cfg).map(|s| s.target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{builtin_by_name, CAUTIOUSLY, LOOK_AROUND, SPIN, WHILE_SPINNING, WHILE_ZIGZAGGING};
    use crate::gridworld::{execute, goal_satisfied, parse_symbols, Color, GridObject, NounPhrase, Shape};
    use crate::meta::Registry;

    fn syms(s: &str) -> Vec<ActionSymbol> {
        parse_symbols(s).unwrap()
    }

    fn corner_percept() -> Percept {
        Percept {
            agent_position: Position::new(3, 2),
            agent_heading: Heading::East,
            target_position: Position::new(1, 1),
        }
    }

    fn corner_world(size: u8) -> WorldState {
        let circle = GridObject { shape: Shape::Circle, color: Color::Red, size, position: Position::new(1, 1) };
        let square = GridObject { shape: Shape::Square, color: Color::Blue, size: 2, position: Position::new(4, 5) };
        WorldState::new(6, Position::new(3, 2), Heading::East, vec![circle, square], 0).unwrap()
    }

    fn lexicon() -> Lexicon {
        Lexicon::new(&Registry::default()).unwrap()
    }

    #[test]
    fn perception() {
        let cmd = Command::parse("push a circle cautiously").unwrap();
        assert_eq!(perceive(&cmd, &corner_world(1)).unwrap(), corner_percept());

        let mut w = corner_world(1);
        w.agent_position = Position::new(1, 1);
        let p = perceive(&cmd, &w).unwrap();
        assert_eq!(p.agent_position, p.target_position);

        w.objects[1] = GridObject { shape: Shape::Circle, ..w.objects[0] };
        w.objects[1].position = Position::new(5, 5);
        let small = Command::parse("push a small circle").unwrap();
        assert!(matches!(perceive(&small, &w), Err(CommandError::AmbiguousReferent { .. })));
    }

    #[test]
    fn navigation_plans() {
        let p = corner_percept();
        let spin = builtin_by_name(WHILE_SPINNING).unwrap();
        let zig = builtin_by_name(WHILE_ZIGZAGGING).unwrap();
        assert_eq!(
            plan_navigation(&p, Some(&spin)),
            Plan { mode: Mode::Allocentric, symbols: syms("North North West") }
        );
        assert_eq!(
            plan_navigation(&p, None),
            Plan { mode: Mode::Egocentric, symbols: syms("turn_left walk walk turn_left walk") }
        );
        let z = plan_navigation(&p, Some(&zig));
        assert_eq!(z.symbols, syms("North West North"));
        assert_eq!(ground(&z.symbols, Heading::East), syms("turn_left walk turn_left walk turn_right walk"));
        let same = Percept { target_position: p.agent_position, ..p };
        assert!(plan_navigation(&same, None).symbols.is_empty());
        assert!(plan_navigation(&same, Some(&zig)).symbols.is_empty());
    }

    #[test]
    fn zigzag_remainder() {
        let p = Percept {
            agent_position: Position::new(0, 0),
            agent_heading: Heading::South,
            target_position: Position::new(1, 4),
        };
        assert_eq!(zigzag_plan(&p), syms("South East East East East"));
        let p = Percept { target_position: Position::new(3, 1), ..p };
        assert_eq!(zigzag_plan(&p), syms("South East South South"));
    }

    #[test]
    fn interactions() {
        let w = corner_world(1);
        let p = corner_percept();
        let physics = Physics::default();
        assert!(plan_interaction(&p, &w, Verb::Walk, Heading::West, &physics).is_empty());
        assert_eq!(plan_interaction(&p, &w, Verb::Push, Heading::West, &physics), syms("push"));
        // Heavy, pulled east from arrival heading west: (1,2) and (1,3)... up to the wall at col 5.
        let heavy = corner_world(4);
        assert_eq!(plan_interaction(&p, &heavy, Verb::Pull, Heading::West, &physics).len(), 8);
        let mut blocked = corner_world(4);
        blocked.objects[1].position = Position::new(1, 4);
        assert_eq!(plan_interaction(&p, &blocked, Verb::Pull, Heading::West, &physics), syms("pull pull pull pull"));
    }

    #[test]
    fn transformation_examples() {
        let spin = builtin_by_name(WHILE_SPINNING).unwrap();
        let plan = Plan { mode: Mode::Allocentric, symbols: syms("North North West West") };
        let spin_s = SPIN.map(|s| s.as_str()).join(" ");
        let expected = format!("{spin_s} turn_left walk {spin_s} walk {spin_s} turn_left walk {spin_s} walk");
        assert_eq!(transform(&plan, &[], Some(&spin), Heading::East, 4).unwrap(), syms(&expected));

        let cautious = builtin_by_name(CAUTIOUSLY).unwrap();
        let ego = Plan { mode: Mode::Egocentric, symbols: syms("turn_left walk walk turn_left walk walk") };
        let look = LOOK_AROUND.map(|s| s.as_str()).join(" ");
        let expected = format!("turn_left {look} walk {look} walk turn_left {look} walk {look} walk");
        assert_eq!(transform(&ego, &[], Some(&cautious), Heading::East, 4).unwrap(), syms(&expected));

        let mut with_push = ego.symbols.clone();
        with_push.push(ActionSymbol::Push);
        assert_eq!(transform(&ego, &[ActionSymbol::Push], None, Heading::East, 4).unwrap(), with_push);
    }

    #[test]
    fn solve_single_step_walk() {
        let circle = GridObject { shape: Shape::Circle, color: Color::Green, size: 2, position: Position::new(2, 3) };
        let w = WorldState::new(6, Position::new(3, 3), Heading::North, vec![circle], 0).unwrap();
        let cmd = Command::parse("walk to a circle").unwrap();
        assert_eq!(solve(&cmd, &w, &lexicon(), &OracleConfig::default()).unwrap(), syms("walk"));
    }

    #[test]
    fn solve_push_cautiously_to_corner() {
        let w = corner_world(1);
        let cmd = Command::parse("push a circle cautiously").unwrap();
        let out = solve(&cmd, &w, &lexicon(), &OracleConfig::default()).unwrap();
        let look = LOOK_AROUND.map(|s| s.as_str()).join(" ");
        let expected = format!("turn_left {look} walk {look} walk turn_left {look} walk {look} push");
        assert_eq!(out, syms(&expected));
        let t = execute(&w, &out).unwrap();
        assert!(goal_satisfied(Verb::Push, &t));
        assert_eq!(t.final_world.objects[0].position, Position::new(1, 0));
    }

    #[test]
    fn solve_errors() {
        let w = corner_world(1);
        let cmd = Command::new(Verb::Walk, NounPhrase::shape(Shape::Circle), Some(vec!["boldly".into()]));
        assert_eq!(
            solve(&cmd, &w, &lexicon(), &OracleConfig::default()),
            Err(OracleError::UnknownAdverb("boldly".into()))
        );
        let cmd = Command::parse("walk to a cylinder").unwrap();
        assert!(matches!(
            solve(&cmd, &w, &lexicon(), &OracleConfig::default()),
            Err(OracleError::Command(CommandError::NoReferent(_)))
        ));
    }
}
