use super::program::{AdverbProgram, Mode, PlanShape, RewriteRule};
use crate::gridworld::ActionSymbol::{self, *};

pub const SPIN: [ActionSymbol; 4] = [TurnLeft, TurnLeft, TurnLeft, TurnLeft];
pub const LOOK_AROUND: [ActionSymbol; 4] = [TurnLeft, TurnRight, TurnRight, TurnLeft];

pub const WHILE_SPINNING: &str = "while spinning";
pub const CAUTIOUSLY: &str = "cautiously";
pub const WHILE_ZIGZAGGING: &str = "while zigzagging";
pub const HESITANTLY: &str = "hesitantly";

fn name(surface: &str) -> Vec<String> {
    surface.split_whitespace().map(str::to_string).collect()
}

fn prefixed(prefix: &[ActionSymbol], lhs: ActionSymbol) -> RewriteRule {
    let mut rhs = prefix.to_vec();
    rhs.push(lhs);
    RewriteRule { lhs, rhs }
}

/// A program that puts `prefix` before every allocentric move, and before
/// push/pull when `wrap_interactions` is set.
pub fn allocentric_prefix_program(
    name: Vec<String>,
    prefix: &[ActionSymbol],
    wrap_interactions: bool,
) -> AdverbProgram {
    let mut rules: Vec<RewriteRule> = ActionSymbol::ALLO.iter().map(|&d| prefixed(prefix, d)).collect();
    if wrap_interactions {
        rules.extend([Push, Pull].map(|v| prefixed(prefix, v)));
    }
    AdverbProgram::new(name, rules, Mode::Allocentric, 1, PlanShape::Canonical).expect("valid by construction")
}

/// A program that puts `prefix` before walk, push and pull.
pub fn egocentric_prefix_program(name: Vec<String>, prefix: &[ActionSymbol]) -> AdverbProgram {
    let rules = [Walk, Push, Pull].map(|v| prefixed(prefix, v));
    AdverbProgram::new(name, rules, Mode::Egocentric, 1, PlanShape::Canonical).expect("valid by construction")
}

/// The four original adverbs, with "while spinning" also wrapping push/pull.
pub fn builtin_adverbs() -> Vec<AdverbProgram> {
    builtin_adverbs_with(true)
}

pub fn builtin_adverbs_with(spinning_wraps_interactions: bool) -> Vec<AdverbProgram> {
    let hesitant = [Walk, Push, Pull].map(|v| RewriteRule { lhs: v, rhs: vec![v, Stay] });
    vec![
        allocentric_prefix_program(name(WHILE_SPINNING), &SPIN, spinning_wraps_interactions),
        egocentric_prefix_program(name(CAUTIOUSLY), &LOOK_AROUND),
        AdverbProgram::new(name(WHILE_ZIGZAGGING), [], Mode::Allocentric, 1, PlanShape::Zigzag)
            .expect("valid by construction"),
        AdverbProgram::new(name(HESITANTLY), hesitant, Mode::Egocentric, 1, PlanShape::Canonical)
            .expect("valid by construction"),
    ]
}

/// Looks up a builtin by surface, accepting `_` for spaces.
pub fn builtin_by_name(surface: &str) -> Option<AdverbProgram> {
    let wanted = surface.replace('_', " ");
    builtin_adverbs().into_iter().find(|p| p.surface() == wanted)
}
