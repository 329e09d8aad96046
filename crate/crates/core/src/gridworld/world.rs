use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::action::Heading;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Position {
    pub row: usize,
    pub col: usize,
}

impl Position {
    pub fn new(row: usize, col: usize) -> Self {
        Position { row, col }
    }

    /// The neighbouring cell in `heading`, or `None` if it leaves a
    /// `grid_size` x `grid_size` grid.
    pub fn step(self, heading: Heading, grid_size: usize) -> Option<Position> {
        let (dr, dc) = heading.delta();
        let row = self.row as i64 + dr;
        let col = self.col as i64 + dc;
        if row < 0 || col < 0 || row >= grid_size as i64 || col >= grid_size as i64 {
            None
        } else {
            Some(Position::new(row as usize, col as usize))
        }
    }

    pub fn in_bounds(self, grid_size: usize) -> bool {
        self.row < grid_size && self.col < grid_size
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

macro_rules! word_enum {
    ($name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(rename_all = "lowercase")]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn as_str(self) -> &'static str {
                match self {
                    $($name::$variant => $text),+
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $name {
            type Err = String;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $($text => Ok($name::$variant),)+
                    _ => Err(format!("unknown {} `{}`", stringify!($name).to_lowercase(), s)),
                }
            }
        }
    };
}

word_enum!(Shape { Circle => "circle", Square => "square", Cylinder => "cylinder" });
word_enum!(Color { Red => "red", Blue => "blue", Green => "green", Yellow => "yellow" });
word_enum!(Verb { Walk => "walk", Push => "push", Pull => "pull" });
word_enum!(SizeAdjective { Small => "small", Big => "big" });

pub const MIN_SIZE: u8 = 1;
pub const MAX_SIZE: u8 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridObject {
    pub shape: Shape,
    pub color: Color,
    pub size: u8,
    #[serde(flatten)]
    pub position: Position,
}

/// Which object sizes need two push/pull actions per cell moved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Physics {
    /// Objects at least this size are heavy; `None` makes every object light.
    pub heavy_min_size: Option<u8>,
}

impl Default for Physics {
    fn default() -> Self {
        Physics { heavy_min_size: Some(3) }
    }
}

impl Physics {
    pub fn is_heavy(&self, object: &GridObject) -> bool {
        self.heavy_min_size.is_some_and(|min| object.size >= min)
    }

    /// Actions spent per cell of object displacement.
    pub fn actions_per_cell(&self, object: &GridObject) -> usize {
        if self.is_heavy(object) {
            2
        } else {
            1
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WorldError {
    #[error("grid size {0} is below the minimum of 2")]
    GridTooSmall(usize),
    #[error("{what} at {position} is outside a {grid_size}x{grid_size} grid")]
    OutOfGrid { what: String, position: Position, grid_size: usize },
    #[error("target index {index} is invalid for {count} objects")]
    BadTargetIndex { index: usize, count: usize },
    #[error("objects {first} and {second} share cell {position}")]
    Overlap { first: usize, second: usize, position: Position },
    #[error("object {index} has size {size}, expected {MIN_SIZE}..={MAX_SIZE}")]
    BadSize { index: usize, size: u8 },
}

/// The grounded situation of one example.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SituationRecord", into = "SituationRecord")]
pub struct WorldState {
    pub grid_size: usize,
    pub agent_position: Position,
    pub agent_heading: Heading,
    pub objects: Vec<GridObject>,
    pub target_index: usize,
}

impl WorldState {
    pub fn new(
        grid_size: usize,
        agent_position: Position,
        agent_heading: Heading,
        objects: Vec<GridObject>,
        target_index: usize,
    ) -> Result<Self, WorldError> {
        let world = WorldState { grid_size, agent_position, agent_heading, objects, target_index };
        world.validate()?;
        Ok(world)
    }

    pub fn validate(&self) -> Result<(), WorldError> {
        if self.grid_size < 2 {
            return Err(WorldError::GridTooSmall(self.grid_size));
        }
        if !self.agent_position.in_bounds(self.grid_size) {
            return Err(WorldError::OutOfGrid {
                what: "agent".into(),
                position: self.agent_position,
                grid_size: self.grid_size,
            });
        }
        if self.target_index >= self.objects.len() {
            return Err(WorldError::BadTargetIndex { index: self.target_index, count: self.objects.len() });
        }
        for (i, obj) in self.objects.iter().enumerate() {
            if !obj.position.in_bounds(self.grid_size) {
                return Err(WorldError::OutOfGrid {
                    what: format!("object {i}"),
                    position: obj.position,
                    grid_size: self.grid_size,
                });
            }
            if !(MIN_SIZE..=MAX_SIZE).contains(&obj.size) {
                return Err(WorldError::BadSize { index: i, size: obj.size });
            }
            if let Some(j) = self.objects[..i].iter().position(|o| o.position == obj.position) {
                return Err(WorldError::Overlap { first: j, second: i, position: obj.position });
            }
        }
        Ok(())
    }

    pub fn target(&self) -> &GridObject {
        &self.objects[self.target_index]
    }

    pub fn object_at(&self, position: Position) -> Option<usize> {
        self.objects.iter().position(|o| o.position == position)
    }

    /// Free cells from `from` (exclusive) along `heading` before a wall or an
    /// object other than `ignore`.
    pub fn free_run(&self, from: Position, heading: Heading, ignore: usize) -> usize {
        let mut n = 0;
        let mut cur = from;
        while let Some(next) = cur.step(heading, self.grid_size) {
            if matches!(self.object_at(next), Some(i) if i != ignore) {
                break;
            }
            n += 1;
            cur = next;
        }
        n
    }
}

#[derive(Serialize, Deserialize)]
struct AgentRecord {
    row: usize,
    col: usize,
    heading: Heading,
}

#[derive(Serialize, Deserialize)]
struct SituationRecord {
    grid_size: usize,
    agent: AgentRecord,
    target_index: usize,
    objects: Vec<GridObject>,
}

impl TryFrom<SituationRecord> for WorldState {
    type Error = WorldError;

    fn try_from(r: SituationRecord) -> Result<Self, Self::Error> {
        WorldState::new(
            r.grid_size,
            Position::new(r.agent.row, r.agent.col),
            r.agent.heading,
            r.objects,
            r.target_index,
        )
    }
}

impl From<WorldState> for SituationRecord {
    fn from(w: WorldState) -> Self {
        SituationRecord {
            grid_size: w.grid_size,
            agent: AgentRecord { row: w.agent_position.row, col: w.agent_position.col, heading: w.agent_heading },
            target_index: w.target_index,
            objects: w.objects,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn obj(shape: Shape, row: usize, col: usize) -> GridObject {
        GridObject { shape, color: Color::Red, size: 1, position: Position::new(row, col) }
    }

    #[test]
    fn rejects_overlap_and_bad_target() {
        let objs = vec![obj(Shape::Circle, 1, 1), obj(Shape::Square, 1, 1)];
        let err = WorldState::new(4, Position::new(0, 0), Heading::East, objs, 0).unwrap_err();
        assert!(matches!(err, WorldError::Overlap { .. }));
        let err = WorldState::new(4, Position::new(0, 0), Heading::East, vec![], 0).unwrap_err();
        assert!(matches!(err, WorldError::BadTargetIndex { .. }));
        let err = WorldState::new(1, Position::new(0, 0), Heading::East, vec![], 0).unwrap_err();
        assert!(matches!(err, WorldError::GridTooSmall(1)));
    }

    #[test]
    fn situation_json_shape() {
        let w = WorldState::new(6, Position::new(3, 2), Heading::East, vec![obj(Shape::Circle, 1, 1)], 0).unwrap();
        let v = serde_json::to_value(&w).unwrap();
        assert_eq!(v["agent"]["heading"], "east");
        assert_eq!(v["agent"]["row"], 3);
        assert_eq!(v["objects"][0]["shape"], "circle");
        assert_eq!(v["objects"][0]["col"], 1);
        let back: WorldState = serde_json::from_value(v).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn invalid_situation_fails_to_deserialize() {
        let v = serde_json::json!({
            "grid_size": 3,
            "agent": {"row": 5, "col": 0, "heading": "north"},
            "target_index": 0,
            "objects": [{"shape": "circle", "color": "red", "size": 1, "row": 0, "col": 0}]
        });
        assert!(serde_json::from_value::<WorldState>(v).is_err());
    }

    #[test]
    fn free_run_stops_at_wall_and_objects() {
        let w = WorldState::new(
            6,
            Position::new(0, 0),
            Heading::East,
            vec![obj(Shape::Circle, 2, 1), obj(Shape::Square, 2, 4)],
            0,
        )
        .unwrap();
        assert_eq!(w.free_run(Position::new(2, 1), Heading::East, 0), 2);
        assert_eq!(w.free_run(Position::new(2, 1), Heading::West, 0), 1);
        assert_eq!(w.free_run(Position::new(2, 1), Heading::North, 0), 2);
    }
}
