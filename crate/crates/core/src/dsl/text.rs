//! Line-oriented program text.
//!
//! ```text
//! name: cautiously
//! mode: egocentric
//! passes: 1
//! plan_shape: canonical
//! walk -> turn_left turn_right turn_right turn_left walk
//! ```
//!
//! `#` starts a comment. `passes` defaults to 1 and `plan_shape` to
//! `canonical`. Canonical output lists rules sorted by lhs name.

use std::fmt::Write;

use super::program::{AdverbProgram, DslError, Mode, PlanShape, RewriteRule};
use crate::gridworld::ActionSymbol;

fn perr(line: usize, column: usize, message: impl Into<String>) -> DslError {
    DslError::Parse { line, column, message: message.into() }
}

/// Whitespace tokens with their 1-based column.
fn tokens(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in text.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &text[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &text[s..]));
    }
    out
}

fn symbol(line: usize, (col, tok): (usize, &str)) -> Result<ActionSymbol, DslError> {
    tok.parse().map_err(|_| perr(line, col, format!("unknown symbol `{tok}`")))
}

pub fn parse_program(text: &str) -> Result<AdverbProgram, DslError> {
    let mut name: Option<Vec<String>> = None;
    let mut mode: Option<Mode> = None;
    let mut passes: Option<u32> = None;
    let mut plan_shape: Option<PlanShape> = None;
    let mut rules: Vec<RewriteRule> = Vec::new();
    let mut seen = std::collections::BTreeMap::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content);
        let Some(&(first_col, _)) = toks.first() else { continue };

        if let Some(arrow) = toks.iter().position(|(_, t)| *t == "->") {
            if arrow != 1 {
                return Err(perr(line, first_col, "rule must be `LHS -> SYMBOLS`"));
            }
            let lhs = symbol(line, toks[0])?;
            if toks.len() == 2 {
                return Err(perr(line, toks[1].0, "rule has an empty right-hand side"));
            }
            let rhs = toks[2..].iter().map(|&t| symbol(line, t)).collect::<Result<Vec<_>, _>>()?;
            if seen.insert(lhs, line).is_some() {
                return Err(DslError::DuplicateLhs { symbol: lhs, line: Some(line) });
            }
            rules.push(RewriteRule { lhs, rhs });
            continue;
        }

        let Some(colon) = content.find(':') else {
            return Err(perr(line, first_col, "expected `key: value` header or `LHS -> SYMBOLS` rule"));
        };
        let key = content[..colon].trim();
        let value_col = colon + 2;
        let value: Vec<(usize, &str)> =
            tokens(&content[colon + 1..]).into_iter().map(|(c, t)| (c + colon + 1, t)).collect();
        let single = |what: &str| -> Result<(usize, &str), DslError> {
            match value.as_slice() {
                [v] => Ok(*v),
                _ => Err(perr(line, value_col, format!("`{what}` takes exactly one value"))),
            }
        };
        let dup = |present: bool| {
            if present {
                Err(perr(line, first_col, format!("duplicate `{key}` header")))
            } else {
                Ok(())
            }
        };
        match key {
            "name" => {
                dup(name.is_some())?;
                name = Some(value.iter().map(|(_, t)| t.to_string()).collect());
            }
            "mode" => {
                dup(mode.is_some())?;
                let (c, v) = single("mode")?;
                mode = Some(v.parse().map_err(|e: String| perr(line, c, e))?);
            }
            "passes" => {
                dup(passes.is_some())?;
                let (c, v) = single("passes")?;
                passes = Some(v.parse().map_err(|_| perr(line, c, format!("invalid pass count `{v}`")))?);
            }
            "plan_shape" => {
                dup(plan_shape.is_some())?;
                let (c, v) = single("plan_shape")?;
                plan_shape = Some(v.parse().map_err(|e: String| perr(line, c, e))?);
            }
            other => return Err(perr(line, first_col, format!("unknown header `{other}`"))),
        }
    }

    let end = last_line + 1;
    let name = name.ok_or_else(|| perr(end, 1, "missing `name` header"))?;
    let mode = mode.ok_or_else(|| perr(end, 1, "missing `mode` header"))?;
    AdverbProgram::new(name, rules, mode, passes.unwrap_or(1), plan_shape.unwrap_or(PlanShape::Canonical))
}

pub fn serialize_program(program: &AdverbProgram) -> String {
    let mut out = String::new();
    let name = program.surface();
    if name.is_empty() {
        out.push_str("name:\n");
    } else {
        writeln!(out, "name: {name}").unwrap();
    }
    writeln!(out, "mode: {}", program.mode()).unwrap();
    writeln!(out, "passes: {}", program.passes()).unwrap();
    writeln!(out, "plan_shape: {}", program.plan_shape()).unwrap();
    for (lhs, rhs) in program.rules() {
        write!(out, "{lhs} ->").unwrap();
        for s in rhs {
            write!(out, " {s}").unwrap();
        }
        out.push('\n');
    }
    out
}
