//! The adverb DSL: a functional L-system over action symbols.
//!
//! An [`AdverbProgram`] is a set of single-symbol productions. Applying it
//! rewrites every matching symbol of a sequence simultaneously; grounding
//! then turns allocentric moves into egocentric turns and walks.

mod builtins;
mod program;
mod rewrite;
mod text;

pub use builtins::{
    allocentric_prefix_program, builtin_adverbs, builtin_adverbs_with, builtin_by_name, egocentric_prefix_program,
    CAUTIOUSLY, HESITANTLY, LOOK_AROUND, SPIN, WHILE_SPINNING, WHILE_ZIGZAGGING,
};
pub use program::{programs_equal, AdverbProgram, DslError, Mode, PlanShape, RewriteRule};
pub use rewrite::{apply_pass, apply_program, ground, ground_with_heading};
pub use text::{parse_program, serialize_program};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gridworld::{parse_symbols, symbols_to_string, ActionSymbol, Heading};
    use proptest::prelude::*;

    fn syms(s: &str) -> Vec<ActionSymbol> {
        parse_symbols(s).unwrap()
    }

    fn builtin(name: &str) -> AdverbProgram {
        builtin_by_name(name).unwrap()
    }

    const CAUTIOUS_EXPANDED: &str = "turn_left turn_left turn_right turn_right turn_left walk \
        turn_left turn_right turn_right turn_left walk \
        turn_left turn_left turn_right turn_right turn_left walk \
        turn_left turn_right turn_right turn_left walk";

    #[test]
    fn cautiously_pass() {
        let out = apply_pass(&builtin(CAUTIOUSLY), &syms("turn_left walk walk turn_left walk walk"));
        assert_eq!(out, syms(CAUTIOUS_EXPANDED));
    }

    #[test]
    fn no_matching_rule_is_identity() {
        let seq = syms("turn_left walk stay North");
        assert_eq!(apply_pass(&builtin(WHILE_ZIGZAGGING), &seq), seq);
        assert_eq!(apply_pass(&builtin(HESITANTLY), &syms("North West turn_left")), syms("North West turn_left"));
    }

    #[test]
    fn spinning_pass_on_allocentric_plan() {
        let out = apply_pass(&builtin(WHILE_SPINNING), &syms("North West"));
        assert_eq!(
            out,
            syms("turn_left turn_left turn_left turn_left North turn_left turn_left turn_left turn_left West")
        );
    }

    #[test]
    fn passes_and_depth() {
        let spin = builtin(WHILE_SPINNING);
        assert_eq!(
            apply_program(&spin, &syms("North"), 4).unwrap(),
            syms("turn_left turn_left turn_left turn_left North")
        );
        let twice = spin.clone().with_passes(2).unwrap();
        let mut expected = vec![ActionSymbol::TurnLeft; 8];
        expected.push(ActionSymbol::North);
        assert_eq!(apply_program(&twice, &syms("North"), 4).unwrap(), expected);
        assert_eq!(apply_program(&spin, &[], 1).unwrap(), vec![]);
        assert_eq!(apply_program(&twice, &syms("North"), 1), Err(DslError::DepthExceeded { passes: 2, max_depth: 1 }));
    }

    #[test]
    fn grounding_examples() {
        assert_eq!(ground(&syms("North North West"), Heading::East), syms("turn_left walk walk turn_left walk"));
        assert_eq!(ground(&syms("North"), Heading::North), syms("walk"));
        assert_eq!(
            ground(&syms("turn_left turn_left turn_left turn_left North"), Heading::East),
            syms("turn_left turn_left turn_left turn_left turn_left walk")
        );
        assert_eq!(ground(&syms("South"), Heading::North), syms("turn_left turn_left walk"));
        assert_eq!(ground(&syms("East"), Heading::North), syms("turn_right walk"));
    }

    #[test]
    fn builtin_set() {
        let all = builtin_adverbs();
        assert_eq!(all.len(), 4);
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                assert!(!programs_equal(a, b));
            }
        }
        let zig = builtin(WHILE_ZIGZAGGING);
        assert_eq!(zig.plan_shape(), PlanShape::Zigzag);
        assert_eq!(zig.rule_count(), 0);
        assert_eq!(builtin(HESITANTLY).rule(ActionSymbol::Push), Some(&syms("push stay")[..]));
        assert_eq!(builtin_by_name("while_spinning").unwrap().surface(), WHILE_SPINNING);
        assert!(builtin_adverbs_with(false)[0].rule(ActionSymbol::Push).is_none());
    }

    #[test]
    fn equality_ignores_names() {
        let c = builtin(CAUTIOUSLY);
        let renamed = c.clone().with_name(vec!["warily".into()]);
        assert!(programs_equal(&c, &renamed));
        let mirror = egocentric_prefix_program(vec!["x".into()], &syms("turn_right turn_left turn_left turn_right"));
        assert!(!programs_equal(&c, &mirror));
        assert!(!programs_equal(&builtin(WHILE_SPINNING), &builtin(HESITANTLY)));
        assert!(!programs_equal(&c, &c.clone().with_passes(2).unwrap()));
    }

    #[test]
    fn program_invariants() {
        let walk_rule = || RewriteRule::new(ActionSymbol::Walk, syms("stay walk")).unwrap();
        assert_eq!(RewriteRule::new(ActionSymbol::Walk, vec![]), Err(DslError::EmptyRhs(ActionSymbol::Walk)));
        assert_eq!(
            AdverbProgram::new(vec![], [walk_rule(), walk_rule()], Mode::Egocentric, 1, PlanShape::Canonical),
            Err(DslError::DuplicateLhs { symbol: ActionSymbol::Walk, line: None })
        );
        assert_eq!(
            AdverbProgram::new(vec![], [walk_rule()], Mode::Allocentric, 1, PlanShape::Canonical),
            Err(DslError::AllocentricWithoutAlloRule)
        );
        let north = RewriteRule::new(ActionSymbol::North, syms("North North")).unwrap();
        assert_eq!(
            AdverbProgram::new(vec![], [north], Mode::Egocentric, 1, PlanShape::Canonical),
            Err(DslError::EgocentricWithAlloRule(ActionSymbol::North))
        );
        assert_eq!(
            AdverbProgram::new(vec![], [walk_rule()], Mode::Egocentric, 0, PlanShape::Canonical),
            Err(DslError::ZeroPasses)
        );
    }

    #[test]
    fn parse_rule_line() {
        let p =
            parse_program("name: careful\nmode: egocentric\nwalk -> turn_left turn_right turn_right turn_left walk\n")
                .unwrap();
        assert_eq!(p.rule(ActionSymbol::Walk), builtin(CAUTIOUSLY).rule(ActionSymbol::Walk));
        assert_eq!(p.passes(), 1);
        assert_eq!(p.plan_shape(), PlanShape::Canonical);
    }

    #[test]
    fn canonical_text_round_trip() {
        for p in builtin_adverbs() {
            let text = serialize_program(&p);
            let back = parse_program(&text).unwrap();
            assert_eq!(back, p);
            assert_eq!(serialize_program(&back), text);
        }
        let cautious = serialize_program(&builtin(CAUTIOUSLY));
        assert_eq!(
            cautious,
            "name: cautiously\nmode: egocentric\npasses: 1\nplan_shape: canonical\n\
             pull -> turn_left turn_right turn_right turn_left pull\n\
             push -> turn_left turn_right turn_right turn_left push\n\
             walk -> turn_left turn_right turn_right turn_left walk\n"
        );
    }

    #[test]
    fn parse_tolerates_comments_and_order() {
        let text = "# spin once\nEast -> North East South  # detour\n\nmode: allocentric\nname: while roaming\n";
        let p = parse_program(text).unwrap();
        assert_eq!(p.surface(), "while roaming");
        assert_eq!(p.rule(ActionSymbol::East), Some(&syms("North East South")[..]));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let dup = "name: x\nmode: egocentric\nwalk -> walk stay\nwalk -> stay walk\n";
        assert_eq!(parse_program(dup), Err(DslError::DuplicateLhs { symbol: ActionSymbol::Walk, line: Some(4) }));
        let bad_sym = "name: x\nmode: egocentric\nwalk -> walk  hop\n";
        assert!(matches!(parse_program(bad_sym), Err(DslError::Parse { line: 3, column: 15, .. })));
        let bad_mode = "name: x\nmode: sideways\n";
        assert!(matches!(parse_program(bad_mode), Err(DslError::Parse { line: 2, column: 7, .. })));
        assert!(matches!(parse_program("mode: egocentric\n"), Err(DslError::Parse { line: 2, .. })));
        assert!(matches!(
            parse_program("name: x\nmode: egocentric\nwalk ->\n"),
            Err(DslError::Parse { line: 3, column: 6, .. })
        ));
        assert!(matches!(parse_program("name: x\nfoo: 1\n"), Err(DslError::Parse { line: 2, column: 1, .. })));
        assert!(matches!(
            parse_program("name: x\nmode: egocentric\nwalk stay\n"),
            Err(DslError::Parse { line: 3, .. })
        ));
    }

    fn any_symbol() -> impl Strategy<Value = ActionSymbol> {
        prop::sample::select(ActionSymbol::EGO.iter().chain(&ActionSymbol::ALLO).copied().collect::<Vec<_>>())
    }

    fn any_program() -> impl Strategy<Value = AdverbProgram> {
        (
            prop::collection::btree_map(any_symbol(), prop::collection::vec(any_symbol(), 1..6), 0..5),
            1u32..3,
            any::<bool>(),
        )
            .prop_filter_map("valid program", |(rules, passes, zig)| {
                let rules: Vec<_> = rules.into_iter().map(|(lhs, rhs)| RewriteRule { lhs, rhs }).collect();
                let shape = if zig { PlanShape::Zigzag } else { PlanShape::Canonical };
                AdverbProgram::new(vec!["p".into()], rules.clone(), Mode::Allocentric, passes, shape)
                    .or_else(|_| AdverbProgram::new(vec!["p".into()], rules, Mode::Egocentric, passes, shape))
                    .ok()
            })
    }

    proptest! {
        #[test]
        fn one_pass_length_law(p in any_program(), s in prop::collection::vec(any_symbol(), 0..20)) {
            let expected: usize = s.iter().map(|x| p.rule(*x).map_or(1, |r| r.len())).sum();
            prop_assert_eq!(apply_pass(&p, &s).len(), expected);
        }

        #[test]
        fn pass_distributes_over_concat(
            p in any_program(),
            s in prop::collection::vec(any_symbol(), 0..12),
            t in prop::collection::vec(any_symbol(), 0..12),
        ) {
            let mut st = s.clone();
            st.extend(&t);
            let mut expected = apply_pass(&p, &s);
            expected.extend(apply_pass(&p, &t));
            prop_assert_eq!(apply_pass(&p, &st), expected);
        }

        #[test]
        fn text_round_trip(p in any_program()) {
            let text = serialize_program(&p);
            let back = parse_program(&text).unwrap();
            prop_assert_eq!(serialize_program(&back), text);
            prop_assert_eq!(back, p);
        }

        #[test]
        fn grounding_output_is_egocentric(
            s in prop::collection::vec(any_symbol(), 0..20),
            h in prop::sample::select(Heading::ALL.to_vec()),
        ) {
            let g = ground(&s, h);
            prop_assert!(g.iter().all(|x| x.is_ego()));
            let walks_in = s.iter().filter(|x| x.is_allo() || **x == ActionSymbol::Walk).count();
            prop_assert_eq!(g.iter().filter(|x| **x == ActionSymbol::Walk).count(), walks_in);
        }

        #[test]
        fn equality_is_an_equivalence(a in any_program(), b in any_program(), c in any_program()) {
            prop_assert!(programs_equal(&a, &a));
            prop_assert_eq!(programs_equal(&a, &b), programs_equal(&b, &a));
            if programs_equal(&a, &b) && programs_equal(&b, &c) {
                prop_assert!(programs_equal(&a, &c));
            }
        }
    }

    #[test]
    fn spin_expansion_string() {
        let out = ground(&apply_pass(&builtin(WHILE_SPINNING), &syms("North")), Heading::East);
        assert_eq!(symbols_to_string(&out), "turn_left turn_left turn_left turn_left turn_left walk");
    }
}
