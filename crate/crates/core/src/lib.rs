//! Symbolic machinery for adverb-manner instruction following in a
//! gridworld: an executor, a rewriting DSL for manners, a generator of novel
//! manners, a rule-based solver built from four modules, and a dataset forge
//! with evaluation tooling.

pub mod dsl;
pub mod forge;
pub mod gridworld;
pub mod harness;
pub mod meta;
pub mod oracle;
pub mod rng;
