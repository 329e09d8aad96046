use super::types::AdverbType;
use super::MetaError;
use crate::dsl::{AdverbProgram, Mode, PlanShape};
use crate::gridworld::{net_rotation, ActionSymbol};

/// Summed `(d_row, d_col)` of the allocentric symbols in `seq`.
pub fn displacement(seq: &[ActionSymbol]) -> (i64, i64) {
    seq.iter().filter_map(|s| s.direction()).fold((0, 0), |(r, c), d| {
        let (dr, dc) = d.delta();
        (r + dr, c + dc)
    })
}

/// `rhs = A lhs B` where A and B hold only turns and `stay`, B has zero net
/// rotation, and A does too unless `lhs` is allocentric (grounding absorbs
/// any heading change before an allocentric move).
fn is_within_cell_wrap(lhs: ActionSymbol, rhs: &[ActionSymbol]) -> bool {
    let mut movers = rhs.iter().enumerate().filter(|(_, s)| !s.is_turn() && **s != ActionSymbol::Stay);
    let Some((at, &mover)) = movers.next() else { return false };
    if movers.next().is_some() || mover != lhs {
        return false;
    }
    let (before, after) = (&rhs[..at], &rhs[at + 1..]);
    net_rotation(after) == 0 && (lhs.is_allo() || net_rotation(before) == 0)
}

fn is_detour_rule(lhs: ActionSymbol, rhs: &[ActionSymbol]) -> bool {
    lhs.is_allo() && rhs.len() > 1 && rhs.iter().all(|s| s.is_allo()) && displacement(rhs) == displacement(&[lhs])
}

/// Assigns a program to the manner taxonomy by its structure.
pub fn classify_program(p: &AdverbProgram) -> Result<AdverbType, MetaError> {
    if p.plan_shape() == PlanShape::Zigzag {
        return Ok(AdverbType::Zigzag);
    }
    let unclassifiable = || MetaError::Unclassifiable(p.surface());
    if p.rule_count() == 0 {
        return Err(unclassifiable());
    }
    let all = |f: &dyn Fn(ActionSymbol, &[ActionSymbol]) -> bool| p.rules().all(|(l, r)| f(l, r));
    match p.mode() {
        Mode::Allocentric if all(&is_within_cell_wrap) => Ok(AdverbType::Spinning),
        Mode::Allocentric if all(&is_detour_rule) => Ok(AdverbType::Detour),
        Mode::Egocentric if all(&|l, r| l.is_movement() && is_within_cell_wrap(l, r)) => Ok(AdverbType::Cautiously),
        _ => Err(unclassifiable()),
    }
}
