use super::action::{ActionSymbol, Heading};
use super::world::{Physics, Position, Verb, WorldState};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExecError {
    #[error("step {step}: `{symbol}` would leave the grid from {from}")]
    OutOfBounds { step: usize, symbol: ActionSymbol, from: Position },
    #[error("step {step}: `{symbol}` is blocked by an object at {cell}")]
    Blocked { step: usize, symbol: ActionSymbol, cell: Position },
    #[error("step {step}: `{symbol}` while not on the target's cell")]
    IllegalInteraction { step: usize, symbol: ActionSymbol },
    #[error("step {step}: allocentric symbol `{symbol}` cannot be executed")]
    AlloSymbolPresent { step: usize, symbol: ActionSymbol },
}

/// Result of simulating an egocentric action sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trajectory {
    /// Agent cells in visiting order, consecutive duplicates collapsed.
    pub visited_cells: Vec<Position>,
    pub final_world: WorldState,
    /// Number of executed actions.
    pub length: usize,
}

/// Simulates `actions` under the default physics.
pub fn execute(world: &WorldState, actions: &[ActionSymbol]) -> Result<Trajectory, ExecError> {
    execute_with(world, actions, &Physics::default())
}

/// Simulates `actions` from `world`.
///
/// Heavy objects move one cell per two interactions of the same kind in the
/// same heading. Turns and `stay` between the two do not reset the count;
/// `walk` or a different interaction does.
pub fn execute_with(world: &WorldState, actions: &[ActionSymbol], physics: &Physics) -> Result<Trajectory, ExecError> {
    if let Some((step, &symbol)) = actions.iter().enumerate().find(|(_, s)| s.is_allo()) {
        return Err(ExecError::AlloSymbolPresent { step, symbol });
    }

    let mut state = world.clone();
    let mut visited = vec![state.agent_position];
    let mut pending: Option<(ActionSymbol, Heading)> = None;
    let grid = state.grid_size;

    for (step, &symbol) in actions.iter().enumerate() {
        match symbol {
            ActionSymbol::TurnLeft => state.agent_heading = state.agent_heading.turn_left(),
            ActionSymbol::TurnRight => state.agent_heading = state.agent_heading.turn_right(),
            ActionSymbol::Stay => {}
            ActionSymbol::Walk => {
                pending = None;
                let from = state.agent_position;
                state.agent_position =
                    from.step(state.agent_heading, grid).ok_or(ExecError::OutOfBounds { step, symbol, from })?;
            }
            ActionSymbol::Push | ActionSymbol::Pull => {
                let here = state.agent_position;
                let target = state.target_index;
                if state.objects[target].position != here {
                    return Err(ExecError::IllegalInteraction { step, symbol });
                }
                let key = (symbol, state.agent_heading);
                if physics.is_heavy(&state.objects[target]) && pending != Some(key) {
                    pending = Some(key);
                    continue;
                }
                pending = None;
                let dir =
                    if symbol == ActionSymbol::Push { state.agent_heading } else { state.agent_heading.opposite() };
                let cell = here.step(dir, grid).ok_or(ExecError::OutOfBounds { step, symbol, from: here })?;
                if state.object_at(cell).is_some() {
                    return Err(ExecError::Blocked { step, symbol, cell });
                }
                state.objects[target].position = cell;
                state.agent_position = cell;
            }
            ActionSymbol::North | ActionSymbol::South | ActionSymbol::East | ActionSymbol::West => {
                unreachable!("allocentric symbols rejected above")
            }
        }
        if visited.last() != Some(&state.agent_position) {
            visited.push(state.agent_position);
        }
    }

    Ok(Trajectory { visited_cells: visited, final_world: state, length: actions.len() })
}

/// Whether the end state of a trajectory fulfils `verb` on the target.
///
/// walk: the agent stands on the target. push/pull: the agent stands on the
/// target and the next cell in the direction of motion (heading for push,
/// opposite for pull) is a wall or another object.
pub fn goal_satisfied(verb: Verb, trajectory: &Trajectory) -> bool {
    let w = &trajectory.final_world;
    let target = w.target();
    if w.agent_position != target.position {
        return false;
    }
    let dir = match verb {
        Verb::Walk => return true,
        Verb::Push => w.agent_heading,
        Verb::Pull => w.agent_heading.opposite(),
    };
    match target.position.step(dir, w.grid_size) {
        None => true,
        Some(cell) => w.object_at(cell).is_some(),
    }
}
