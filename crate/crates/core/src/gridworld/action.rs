use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Direction the agent faces, also the world-frame direction of an
/// allocentric move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Heading {
    North,
    East,
    South,
    West,
}

impl Heading {
    pub const ALL: [Heading; 4] = [Heading::North, Heading::East, Heading::South, Heading::West];

    /// Counter-clockwise quarter turn: east -> north -> west -> south -> east.
    pub fn turn_left(self) -> Heading {
        match self {
            Heading::East => Heading::North,
            Heading::North => Heading::West,
            Heading::West => Heading::South,
            Heading::South => Heading::East,
        }
    }

    pub fn turn_right(self) -> Heading {
        match self {
            Heading::North => Heading::East,
            Heading::East => Heading::South,
            Heading::South => Heading::West,
            Heading::West => Heading::North,
        }
    }

    pub fn opposite(self) -> Heading {
        self.turn_left().turn_left()
    }

    /// Unit step as `(d_row, d_col)`; row 0 is the north edge.
    pub fn delta(self) -> (i64, i64) {
        match self {
            Heading::North => (-1, 0),
            Heading::East => (0, 1),
            Heading::South => (1, 0),
            Heading::West => (0, -1),
        }
    }

    /// Number of left quarter turns needed to go from `self` to `to` (0..4).
    pub fn left_turns_to(self, to: Heading) -> u8 {
        let mut h = self;
        let mut n = 0;
        while h != to {
            h = h.turn_left();
            n += 1;
        }
        n
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Heading::North => "north",
            Heading::East => "east",
            Heading::South => "south",
            Heading::West => "west",
        }
    }

    /// The allocentric symbol that moves one cell this way.
    pub fn allo_symbol(self) -> ActionSymbol {
        match self {
            Heading::North => ActionSymbol::North,
            Heading::East => ActionSymbol::East,
            Heading::South => ActionSymbol::South,
            Heading::West => ActionSymbol::West,
        }
    }
}

impl fmt::Display for Heading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Heading {
    type Err = SymbolError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "north" => Ok(Heading::North),
            "east" => Ok(Heading::East),
            "south" => Ok(Heading::South),
            "west" => Ok(Heading::West),
            _ => Err(SymbolError::UnknownHeading(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymbolError {
    #[error("unknown action symbol `{0}`")]
    UnknownSymbol(String),
    #[error("unknown heading `{0}`")]
    UnknownHeading(String),
}

/// One symbol of an action sequence.
///
/// Egocentric primitives serialize lowercase, allocentric moves capitalized,
/// so the two vocabularies never collide when parsing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ActionSymbol {
    Walk,
    Push,
    Pull,
    Stay,
    TurnLeft,
    TurnRight,
    North,
    South,
    East,
    West,
}

impl ActionSymbol {
    pub const EGO: [ActionSymbol; 6] = [
        ActionSymbol::Walk,
        ActionSymbol::Push,
        ActionSymbol::Pull,
        ActionSymbol::Stay,
        ActionSymbol::TurnLeft,
        ActionSymbol::TurnRight,
    ];
    pub const ALLO: [ActionSymbol; 4] =
        [ActionSymbol::North, ActionSymbol::South, ActionSymbol::East, ActionSymbol::West];

    pub fn as_str(self) -> &'static str {
        match self {
            ActionSymbol::Walk => "walk",
            ActionSymbol::Push => "push",
            ActionSymbol::Pull => "pull",
            ActionSymbol::Stay => "stay",
            ActionSymbol::TurnLeft => "turn_left",
            ActionSymbol::TurnRight => "turn_right",
            ActionSymbol::North => "North",
            ActionSymbol::South => "South",
            ActionSymbol::East => "East",
            ActionSymbol::West => "West",
        }
    }

    pub fn is_allo(self) -> bool {
        self.direction().is_some()
    }

    pub fn is_ego(self) -> bool {
        !self.is_allo()
    }

    pub fn is_turn(self) -> bool {
        matches!(self, ActionSymbol::TurnLeft | ActionSymbol::TurnRight)
    }

    /// Movement primitives that a manner may wrap: walk, push, pull.
    pub fn is_movement(self) -> bool {
        matches!(self, ActionSymbol::Walk | ActionSymbol::Push | ActionSymbol::Pull)
    }

    /// World direction of an allocentric symbol.
    pub fn direction(self) -> Option<Heading> {
        match self {
            ActionSymbol::North => Some(Heading::North),
            ActionSymbol::South => Some(Heading::South),
            ActionSymbol::East => Some(Heading::East),
            ActionSymbol::West => Some(Heading::West),
            _ => None,
        }
    }

    /// Signed quarter-turn rotation contributed by this symbol (+1 = left).
    pub fn rotation(self) -> i32 {
        match self {
            ActionSymbol::TurnLeft => 1,
            ActionSymbol::TurnRight => -1,
            _ => 0,
        }
    }
}

impl PartialOrd for ActionSymbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Symbols order by their serialized name, which fixes the canonical rule
/// order of program text.
impl Ord for ActionSymbol {
    fn cmp(&self, other: &Self) -> Ordering {
        self.as_str().cmp(other.as_str())
    }
}

impl fmt::Display for ActionSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ActionSymbol {
    type Err = SymbolError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "walk" => ActionSymbol::Walk,
            "push" => ActionSymbol::Push,
            "pull" => ActionSymbol::Pull,
            "stay" => ActionSymbol::Stay,
            "turn_left" => ActionSymbol::TurnLeft,
            "turn_right" => ActionSymbol::TurnRight,
            "North" => ActionSymbol::North,
            "South" => ActionSymbol::South,
            "East" => ActionSymbol::East,
            "West" => ActionSymbol::West,
            _ => return Err(SymbolError::UnknownSymbol(s.to_string())),
        })
    }
}

impl Serialize for ActionSymbol {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for ActionSymbol {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a whitespace-separated symbol string.
pub fn parse_symbols(text: &str) -> Result<Vec<ActionSymbol>, SymbolError> {
    text.split_whitespace().map(str::parse).collect()
}

pub fn symbols_to_string(symbols: &[ActionSymbol]) -> String {
    symbols.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(" ")
}

pub fn symbols_to_tokens(symbols: &[ActionSymbol]) -> Vec<String> {
    symbols.iter().map(|s| s.as_str().to_string()).collect()
}

/// Net rotation of a sequence in quarter turns, reduced mod 4 into 0..4.
pub fn net_rotation(symbols: &[ActionSymbol]) -> u8 {
    symbols.iter().map(|s| s.rotation()).sum::<i32>().rem_euclid(4) as u8
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn left_right_are_inverse() {
        for h in Heading::ALL {
            assert_eq!(h.turn_left().turn_right(), h);
            assert_eq!(h.turn_right().turn_left(), h);
            assert_eq!(h.turn_left().turn_left().turn_left().turn_left(), h);
        }
    }

    #[test]
    fn left_cycle_order() {
        assert_eq!(Heading::East.turn_left(), Heading::North);
        assert_eq!(Heading::North.turn_left(), Heading::West);
        assert_eq!(Heading::West.turn_left(), Heading::South);
        assert_eq!(Heading::South.turn_left(), Heading::East);
    }

    #[test]
    fn vocabularies_are_disjoint_and_round_trip() {
        for s in ActionSymbol::EGO {
            assert!(s.is_ego());
            assert_eq!(s.as_str(), s.as_str().to_lowercase());
            assert_eq!(s.as_str().parse::<ActionSymbol>().unwrap(), s);
        }
        for s in ActionSymbol::ALLO {
            assert!(s.is_allo());
            assert!(s.as_str().chars().next().unwrap().is_uppercase());
            assert_eq!(s.as_str().parse::<ActionSymbol>().unwrap(), s);
        }
        assert!("north".parse::<ActionSymbol>().is_err());
        assert!("Walk".parse::<ActionSymbol>().is_err());
    }

    #[test]
    fn symbol_order_is_by_name() {
        let mut all: Vec<_> = ActionSymbol::EGO.iter().chain(&ActionSymbol::ALLO).copied().collect();
        all.sort();
        let names: Vec<_> = all.iter().map(|s| s.as_str()).collect();
        assert_eq!(
            names,
            ["East", "North", "South", "West", "pull", "push", "stay", "turn_left", "turn_right", "walk"]
        );
    }

    #[test]
    fn rotation_mod_four() {
        let spin = parse_symbols("turn_left turn_left turn_left turn_left").unwrap();
        assert_eq!(net_rotation(&spin), 0);
        let look = parse_symbols("turn_right turn_left turn_left turn_right").unwrap();
        assert_eq!(net_rotation(&look), 0);
        assert_eq!(net_rotation(&[ActionSymbol::TurnRight]), 3);
    }
}
