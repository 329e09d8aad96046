use std::fmt;

use serde::{Deserialize, Serialize};

use super::world::{Color, Shape, SizeAdjective, Verb, WorldState};

/// `[size_adj] [color] shape`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NounPhrase {
    pub size_adj: Option<SizeAdjective>,
    pub color: Option<Color>,
    pub shape: Shape,
}

impl NounPhrase {
    pub fn shape(shape: Shape) -> Self {
        NounPhrase { size_adj: None, color: None, shape }
    }

    pub fn tokens(&self) -> Vec<String> {
        let mut out = Vec::with_capacity(3);
        if let Some(s) = self.size_adj {
            out.push(s.to_string());
        }
        if let Some(c) = self.color {
            out.push(c.to_string());
        }
        out.push(self.shape.to_string());
        out
    }

    /// Number of optional modifiers present.
    pub fn modifiers(&self) -> usize {
        self.size_adj.is_some() as usize + self.color.is_some() as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Command {
    pub verb: Verb,
    pub object: NounPhrase,
    /// Surface tokens of the adverb, if any.
    pub adverb: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CommandError {
    #[error("command is empty")]
    Empty,
    #[error("unexpected token `{found}` at position {position}, expected {expected}")]
    Unexpected { position: usize, found: String, expected: &'static str },
    #[error("command ended early, expected {0}")]
    Truncated(&'static str),
    #[error("no object matches `{0}`")]
    NoReferent(String),
    #[error("{count} objects match `{phrase}`")]
    AmbiguousReferent { phrase: String, count: usize },
}

impl Command {
    pub fn new(verb: Verb, object: NounPhrase, adverb: Option<Vec<String>>) -> Self {
        Command { verb, object, adverb: adverb.filter(|a| !a.is_empty()) }
    }

    /// Surface token form: `walk to a ...` or `push a ...`, adverb last.
    pub fn tokens(&self) -> Vec<String> {
        let mut out = vec![self.verb.to_string()];
        if self.verb == Verb::Walk {
            out.push("to".into());
        }
        out.push("a".into());
        out.extend(self.object.tokens());
        if let Some(adv) = &self.adverb {
            out.extend(adv.iter().cloned());
        }
        out
    }

    pub fn adverb_surface(&self) -> Option<String> {
        self.adverb.as_ref().map(|a| a.join(" "))
    }

    pub fn without_adverb(&self) -> Command {
        Command { adverb: None, ..self.clone() }
    }

    pub fn parse(text: &str) -> Result<Command, CommandError> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        Self::from_tokens(&tokens)
    }

    pub fn from_tokens<S: AsRef<str>>(tokens: &[S]) -> Result<Command, CommandError> {
        let toks: Vec<&str> = tokens.iter().map(|t| t.as_ref()).collect();
        let mut pos = 0;
        let next = |pos: &mut usize, expected: &'static str| -> Result<&str, CommandError> {
            let t = toks.get(*pos).copied().ok_or(CommandError::Truncated(expected))?;
            *pos += 1;
            Ok(t)
        };
        let unexpected = |position: usize, found: &str, expected: &'static str| CommandError::Unexpected {
            position,
            found: found.to_string(),
            expected,
        };

        if toks.is_empty() {
            return Err(CommandError::Empty);
        }
        let first = next(&mut pos, "a verb")?;
        let verb: Verb = first.to_ascii_lowercase().parse().map_err(|_| unexpected(0, first, "a verb"))?;
        if verb == Verb::Walk {
            let t = next(&mut pos, "`to`")?;
            if t != "to" {
                return Err(unexpected(pos - 1, t, "`to`"));
            }
        }
        let t = next(&mut pos, "`a`")?;
        if t != "a" {
            return Err(unexpected(pos - 1, t, "`a`"));
        }

        let mut size_adj = None;
        let mut color = None;
        let shape = loop {
            let t = next(&mut pos, "a shape")?;
            if let Ok(s) = t.parse::<Shape>() {
                break s;
            }
            if size_adj.is_none() && color.is_none() {
                if let Ok(s) = t.parse::<SizeAdjective>() {
                    size_adj = Some(s);
                    continue;
                }
            }
            if color.is_none() {
                if let Ok(c) = t.parse::<Color>() {
                    color = Some(c);
                    continue;
                }
            }
            return Err(unexpected(pos - 1, t, "a size, color or shape"));
        };

        let rest: Vec<String> = toks[pos..].iter().map(|t| t.trim_end_matches('.').to_string()).collect();
        Ok(Command::new(verb, NounPhrase { size_adj, color, shape }, Some(rest)))
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tokens().join(" "))
    }
}

/// Finds the unique object a noun phrase refers to.
///
/// `small`/`big` pick the minimum/maximum size among the objects matching
/// shape and color; the phrase is ambiguous if that size is shared.
pub fn resolve_target(phrase: &NounPhrase, world: &WorldState) -> Result<usize, CommandError> {
    let mut matches: Vec<usize> = world
        .objects
        .iter()
        .enumerate()
        .filter(|(_, o)| o.shape == phrase.shape && phrase.color.is_none_or(|c| o.color == c))
        .map(|(i, _)| i)
        .collect();
    let describe = || phrase.tokens().join(" ");
    if matches.is_empty() {
        return Err(CommandError::NoReferent(describe()));
    }
    if let Some(adj) = phrase.size_adj {
        let sizes = matches.iter().map(|&i| world.objects[i].size);
        let pick = match adj {
            SizeAdjective::Small => sizes.min(),
            SizeAdjective::Big => sizes.max(),
        }
        .expect("nonempty");
        matches.retain(|&i| world.objects[i].size == pick);
    }
    match matches.as_slice() {
        [i] => Ok(*i),
        _ => Err(CommandError::AmbiguousReferent { phrase: describe(), count: matches.len() }),
    }
}
