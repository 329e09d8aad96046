use super::program::{AdverbProgram, DslError};
use crate::gridworld::{ActionSymbol, Heading};

/// One parallel rewriting step: every symbol with a rule is replaced by its
/// right-hand side, all at once.
pub fn apply_pass(program: &AdverbProgram, sequence: &[ActionSymbol]) -> Vec<ActionSymbol> {
    let mut out = Vec::with_capacity(sequence.len());
    for &s in sequence {
        match program.rule(s) {
            Some(rhs) => out.extend_from_slice(rhs),
            None => out.push(s),
        }
    }
    out
}

/// Applies `program.passes()` parallel passes, refusing programs that ask for
/// more than `max_depth`.
pub fn apply_program(
    program: &AdverbProgram,
    sequence: &[ActionSymbol],
    max_depth: u32,
) -> Result<Vec<ActionSymbol>, DslError> {
    if program.passes() > max_depth {
        return Err(DslError::DepthExceeded { passes: program.passes(), max_depth });
    }
    let mut cur = sequence.to_vec();
    for _ in 0..program.passes() {
        cur = apply_pass(program, &cur);
    }
    Ok(cur)
}

/// Converts a mixed sequence to egocentric primitives.
///
/// Each allocentric symbol becomes the shortest turn sequence from the
/// tracked heading (a half turn is two `turn_left`) followed by `walk`.
pub fn ground(sequence: &[ActionSymbol], start: Heading) -> Vec<ActionSymbol> {
    ground_with_heading(sequence, start).0
}

/// [`ground`], also returning the heading after the last symbol.
pub fn ground_with_heading(sequence: &[ActionSymbol], start: Heading) -> (Vec<ActionSymbol>, Heading) {
    let mut h = start;
    let mut out = Vec::with_capacity(sequence.len() * 2);
    for &s in sequence {
        match s.direction() {
            Some(d) => {
                match h.left_turns_to(d) {
                    0 => {}
                    1 => out.push(ActionSymbol::TurnLeft),
                    2 => out.extend([ActionSymbol::TurnLeft, ActionSymbol::TurnLeft]),
                    _ => out.push(ActionSymbol::TurnRight),
                }
                out.push(ActionSymbol::Walk);
                h = d;
            }
            None => {
                match s {
                    ActionSymbol::TurnLeft => h = h.turn_left(),
                    ActionSymbol::TurnRight => h = h.turn_right(),
                    _ => {}
                }
                out.push(s);
            }
        }
    }
    (out, h)
}
