//! Sampling novel adverb programs and organizing them into registries.

mod classify;
mod names;
mod registry;
mod sample;
mod types;

pub use classify::{classify_program, displacement};
pub use names::{generate_name, NameGenerator};
pub use registry::{
    sample_registry, sample_registry_with, type_histogram, Lexicon, LexiconEntry, Registry, RegistrySummary,
};
pub use sample::sample_program;
pub use types::{AdverbType, MetaGrammarConfig, TypeWeights};

use crate::dsl::DslError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MetaError {
    #[error("invalid meta-grammar config: {0}")]
    InvalidConfig(String),
    #[error("zigzag-type manners are not sampled")]
    ZigzagNotSampled,
    #[error("program `{0}` fits no adverb type")]
    Unclassifiable(String),
    #[error("slot {slot}: {rejects} consecutive duplicate programs")]
    RejectBudgetExceeded { slot: usize, rejects: usize },
    #[error("adverb `{0}` duplicates an existing name or program")]
    DuplicateAdverb(String),
    #[error("registry block starting at line {}: {source}", line_offset + 1)]
    RegistryFile { line_offset: usize, source: DslError },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{
        apply_pass, builtin_adverbs, builtin_by_name, egocentric_prefix_program, parse_program, programs_equal, Mode,
        CAUTIOUSLY, HESITANTLY, WHILE_SPINNING, WHILE_ZIGZAGGING,
    };
    use crate::gridworld::{net_rotation, parse_symbols, ActionSymbol};
    use crate::rng::derive_rng;
    use std::collections::HashSet;

    fn detour_east() -> crate::dsl::AdverbProgram {
        parse_program("name: while roaming\nmode: allocentric\nEast -> North East South\n").unwrap()
    }

    #[test]
    fn builtins_classify() {
        assert_eq!(classify_program(&builtin_by_name(WHILE_SPINNING).unwrap()), Ok(AdverbType::Spinning));
        assert_eq!(classify_program(&builtin_by_name(CAUTIOUSLY).unwrap()), Ok(AdverbType::Cautiously));
        assert_eq!(classify_program(&builtin_by_name(WHILE_ZIGZAGGING).unwrap()), Ok(AdverbType::Zigzag));
        assert_eq!(classify_program(&builtin_by_name(HESITANTLY).unwrap()), Ok(AdverbType::Cautiously));
    }

    #[test]
    fn detour_exemplar_classifies() {
        assert_eq!(classify_program(&detour_east()), Ok(AdverbType::Detour));
        assert_eq!(displacement(&parse_symbols("North East South").unwrap()), (0, 1));
    }

    #[test]
    fn unclassifiable_is_reported() {
        let p = parse_program("name: odd\nmode: allocentric\nEast -> North North\n").unwrap();
        assert_eq!(classify_program(&p), Err(MetaError::Unclassifiable("odd".into())));
        let p = parse_program("name: tilt\nmode: egocentric\nwalk -> turn_left walk\n").unwrap();
        assert!(classify_program(&p).is_err());
    }

    #[test]
    fn mirrored_look_is_cautiously_type() {
        let p = egocentric_prefix_program(vec![], &parse_symbols("turn_right turn_left turn_left turn_right").unwrap());
        assert_eq!(classify_program(&p), Ok(AdverbType::Cautiously));
    }

    #[test]
    fn zigzag_is_not_sampled() {
        let cfg = MetaGrammarConfig::default();
        assert_eq!(
            sample_program(&mut derive_rng(0, "t", &[]), AdverbType::Zigzag, &cfg),
            Err(MetaError::ZigzagNotSampled)
        );
    }

    #[test]
    fn sampled_programs_classify_back() {
        let cfg = MetaGrammarConfig::default();
        for ty in AdverbType::SAMPLED {
            for i in 0..1000 {
                let p = sample_program(&mut derive_rng(3, "t", &[i]), ty, &cfg).unwrap();
                assert_eq!(classify_program(&p), Ok(ty), "{p:?}");
            }
        }
    }

    #[test]
    fn cautiously_samples_have_net_zero_prefixes() {
        let cfg = MetaGrammarConfig::default();
        for i in 0..1000 {
            let p = sample_program(&mut derive_rng(4, "t", &[i]), AdverbType::Cautiously, &cfg).unwrap();
            for (lhs, rhs) in p.rules() {
                assert!(lhs.is_movement());
                assert_eq!(*rhs.last().unwrap(), lhs);
                let prefix = &rhs[..rhs.len() - 1];
                assert!(prefix.iter().all(|s| s.is_turn()));
                assert!((2..=8).contains(&prefix.len()));
                assert_eq!(net_rotation(prefix), 0);
            }
        }
    }

    #[test]
    fn detour_samples_respect_bounds() {
        let cfg = MetaGrammarConfig::default();
        for i in 0..1000 {
            let p = sample_program(&mut derive_rng(5, "t", &[i]), AdverbType::Detour, &cfg).unwrap();
            assert!(p.rule_count() >= 1);
            for (lhs, rhs) in p.rules() {
                assert!(rhs.len() > 1 && rhs.len() <= cfg.detour_rhs_max);
                assert_eq!(displacement(rhs), displacement(&[lhs]));
            }
        }
    }

    #[test]
    fn config_validation() {
        let mut cfg = MetaGrammarConfig::default();
        cfg.type_weights.zigzag = 0.1;
        assert!(cfg.validate().is_err());
        let cfg = MetaGrammarConfig { prefix_len_min: 3, prefix_len_max: 3, ..MetaGrammarConfig::default() };
        assert!(cfg.validate().is_err());
        let w = TypeWeights::parse("spinning=0.5, cautiously=0.5").unwrap();
        assert_eq!(w.detour, 0.0);
        assert!(TypeWeights::parse("sideways=1").is_err());
    }

    #[test]
    fn names_follow_templates_and_never_repeat() {
        let mut gen = NameGenerator::default();
        let mut seen = HashSet::new();
        for i in 0..1000 {
            let mode = if i % 2 == 0 { Mode::Allocentric } else { Mode::Egocentric };
            let name = gen.generate(&mut derive_rng(1, "n", &[i]), mode);
            match mode {
                Mode::Allocentric => {
                    assert_eq!(name.len(), 2);
                    assert_eq!(name[0], "while");
                    assert!(name[1].ends_with("ing"));
                }
                Mode::Egocentric => {
                    assert_eq!(name.len(), 1);
                    assert!(name[0].ends_with("ly"));
                }
            }
            assert!(seen.insert(name.join(" ")));
        }
        let a = generate_name(&mut derive_rng(2, "n", &[]), Mode::Allocentric);
        let b = generate_name(&mut derive_rng(2, "n", &[]), Mode::Allocentric);
        assert_eq!(a, b);
    }

    #[test]
    fn empty_registry() {
        assert!(sample_registry(1, 0, &MetaGrammarConfig::default()).unwrap().is_empty());
    }

    #[test]
    fn registry_of_150_is_unique_and_deterministic() {
        let cfg = MetaGrammarConfig::default();
        let r = sample_registry(42, 150, &cfg).unwrap();
        assert_eq!(r.len(), 150);
        let builtins = builtin_adverbs();
        for (i, e) in r.entries.iter().enumerate() {
            assert!(builtins.iter().all(|b| !programs_equal(b, &e.program)));
            assert!(r.entries[..i].iter().all(|o| !programs_equal(&o.program, &e.program)));
            assert_eq!(classify_program(&e.program), Ok(e.adverb_type));
        }
        r.check_unique().unwrap();
        assert_eq!(sample_registry(42, 150, &cfg).unwrap(), r);
        let h = type_histogram(&r);
        assert!(h[&AdverbType::Spinning] > h[&AdverbType::Detour]);
    }

    #[test]
    fn registry_text_round_trip() {
        let r = sample_registry(8, 20, &MetaGrammarConfig::default()).unwrap();
        let text = r.to_text();
        let back = Registry::from_text(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.digest(), r.digest());
    }

    #[test]
    fn pinned_entries_lead_and_duplicates_fail() {
        let cfg = MetaGrammarConfig::default();
        let mirror = egocentric_prefix_program(
            vec!["warily".into()],
            &parse_symbols("turn_right turn_left turn_left turn_right").unwrap(),
        );
        let r = sample_registry_with(3, 10, &cfg, std::slice::from_ref(&mirror)).unwrap();
        assert_eq!(r.entries[0].program, mirror);
        assert_eq!(r.len(), 10);
        let renamed_builtin = builtin_by_name(CAUTIOUSLY).unwrap().with_name(vec!["x".into()]);
        assert!(matches!(sample_registry_with(3, 2, &cfg, &[renamed_builtin]), Err(MetaError::DuplicateAdverb(_))));
    }

    #[test]
    fn reject_budget() {
        let cfg = MetaGrammarConfig {
            type_weights: TypeWeights { spinning: 1.0, cautiously: 0.0, detour: 0.0, zigzag: 0.0 },
            prefix_len_min: 2,
            prefix_len_max: 2,
            max_rejects: 50,
            ..Default::default()
        };
        // Only two net-zero prefixes of length 2 exist.
        assert!(matches!(sample_registry(0, 3, &cfg), Err(MetaError::RejectBudgetExceeded { slot: 2, .. })));
    }

    #[test]
    fn lexicon_lookup() {
        let r = sample_registry(8, 5, &MetaGrammarConfig::default()).unwrap();
        let lex = Lexicon::new(&r).unwrap();
        assert_eq!(lex.len(), 9);
        assert!(lex.is_builtin("cautiously"));
        let s = r.entries[0].surface_str();
        assert!(!lex.is_builtin(&s));
        assert_eq!(lex.lookup(&s).unwrap().program, r.entries[0].program);
        assert!(lex.lookup("boldly").is_none());
        let spin = lex.lookup(WHILE_SPINNING).unwrap();
        assert_eq!(apply_pass(&spin.program, &[ActionSymbol::Push]).len(), 5);
    }
}
