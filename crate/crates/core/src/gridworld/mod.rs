//! World model, command semantics and the egocentric action executor.

mod action;
mod command;
mod exec;
mod sample;
mod world;

pub use action::{
    net_rotation, parse_symbols, symbols_to_string, symbols_to_tokens, ActionSymbol, Heading, SymbolError,
};
pub use command::{resolve_target, Command, CommandError, NounPhrase};
pub use exec::{execute, execute_with, goal_satisfied, ExecError, Trajectory};
pub use sample::{minimal_descriptions, sample_situation, SampleError, SituationConfig};
pub use world::{
    Color, GridObject, Physics, Position, Shape, SizeAdjective, Verb, WorldError, WorldState, MAX_SIZE, MIN_SIZE,
};
