use std::fmt::Write;

use crate::forge::Dataset;
use crate::gridworld::{symbols_to_string, Heading, Position, Shape, WorldState};

fn agent_glyph(h: Heading) -> char {
    match h {
        Heading::North => '^',
        Heading::East => '>',
        Heading::South => 'v',
        Heading::West => '<',
    }
}

fn shape_glyph(s: Shape) -> char {
    match s {
        Shape::Circle => 'C',
        Shape::Square => 'S',
        Shape::Cylinder => 'Y',
    }
}

/// ASCII picture of a world. Each cell shows the agent's heading arrow and
/// an object as color initial, shape letter and size; `*` marks the target.
pub fn render_grid(world: &WorldState) -> String {
    let n = world.grid_size;
    let border = format!("+{}\n", "-----+".repeat(n));
    let mut out = border.clone();
    for row in 0..n {
        out.push('|');
        for col in 0..n {
            let pos = Position::new(row, col);
            let agent = if world.agent_position == pos { agent_glyph(world.agent_heading) } else { ' ' };
            let obj = match world.object_at(pos) {
                Some(i) => {
                    let o = &world.objects[i];
                    let color = o.color.as_str().chars().next().unwrap_or('?');
                    let mark = if i == world.target_index { '*' } else { ' ' };
                    format!("{color}{}{}{mark}", shape_glyph(o.shape), o.size)
                }
                None => "    ".to_string(),
            };
            write!(out, "{agent}{obj}|").unwrap();
        }
        out.push('\n');
        out.push_str(&border);
    }
    out
}

/// Grid, command, adverb, target and split labels of one example.
pub fn inspect(ds: &Dataset, index: usize) -> Option<String> {
    let ex = ds.examples.get(index)?;
    let mut out = render_grid(&ex.world);
    writeln!(out, "command: {}", ex.command).unwrap();
    match &ex.adverb {
        Some(a) => writeln!(out, "adverb:  {} ({})", a.surface, a.adverb_type).unwrap(),
        None => writeln!(out, "adverb:  none").unwrap(),
    }
    writeln!(out, "target:  {}", symbols_to_string(&ex.target)).unwrap();
    writeln!(out, "length:  {}", ex.target.len()).unwrap();
    for s in &ds.splits {
        writeln!(out, "split:   {} = {}", s.name, s.label(index).unwrap_or("excluded")).unwrap();
    }
    Some(out)
}
