use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::dsl::{builtin_adverbs, Mode};

const CONSONANTS: &[char] = &['b', 'd', 'f', 'g', 'k', 'l', 'm', 'n', 'p', 'r', 's', 't', 'v', 'z'];
const VOWELS: &[char] = &['a', 'e', 'i', 'o', 'u'];

/// Hands out pseudo-adverb names that never repeat within one generator.
///
/// Allocentric manners read `while <stem>ing`, egocentric ones `<stem>ly`,
/// with a consonant-vowel stem of two or three syllables.
#[derive(Debug, Clone)]
pub struct NameGenerator {
    used: HashSet<String>,
}

impl Default for NameGenerator {
    fn default() -> Self {
        let used = builtin_adverbs().iter().map(|p| p.surface()).collect();
        NameGenerator { used }
    }
}

impl NameGenerator {
    /// Marks a surface as taken; returns false if it already was.
    pub fn reserve(&mut self, surface: &str) -> bool {
        self.used.insert(surface.to_string())
    }

    pub fn generate<R: Rng + ?Sized>(&mut self, rng: &mut R, mode: Mode) -> Vec<String> {
        loop {
            let syllables = rng.gen_range(2..=3);
            let stem: String =
                (0..syllables).flat_map(|_| [*CONSONANTS.choose(rng).unwrap(), *VOWELS.choose(rng).unwrap()]).collect();
            let name = match mode {
                Mode::Allocentric => vec!["while".to_string(), format!("{stem}ing")],
                Mode::Egocentric => vec![format!("{stem}ly")],
            };
            if self.reserve(&name.join(" ")) {
                return name;
            }
        }
    }
}

/// Draws one fresh name from `rng`.
pub fn generate_name<R: Rng + ?Sized>(rng: &mut R, mode: Mode) -> Vec<String> {
    NameGenerator::default().generate(rng, mode)
}
