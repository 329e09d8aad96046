use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::gridworld::ActionSymbol;

/// Which vocabulary a program's plan-level rules target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Allocentric,
    Egocentric,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Allocentric => "allocentric",
            Mode::Egocentric => "egocentric",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "allocentric" => Ok(Mode::Allocentric),
            "egocentric" => Ok(Mode::Egocentric),
            _ => Err(format!("unknown mode `{s}`")),
        }
    }
}

/// Shape of the navigation plan a program expects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlanShape {
    Canonical,
    Zigzag,
}

impl PlanShape {
    pub fn as_str(self) -> &'static str {
        match self {
            PlanShape::Canonical => "canonical",
            PlanShape::Zigzag => "zigzag",
        }
    }
}

impl fmt::Display for PlanShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PlanShape {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "canonical" => Ok(PlanShape::Canonical),
            "zigzag" => Ok(PlanShape::Zigzag),
            _ => Err(format!("unknown plan shape `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DslError {
    #[error("rule for `{0}` has an empty right-hand side")]
    EmptyRhs(ActionSymbol),
    #[error("duplicate rule for `{symbol}`{}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    DuplicateLhs { symbol: ActionSymbol, line: Option<usize> },
    #[error("passes must be at least 1")]
    ZeroPasses,
    #[error("allocentric program needs an allocentric rule or a zigzag plan")]
    AllocentricWithoutAlloRule,
    #[error("egocentric program has allocentric rule for `{0}`")]
    EgocentricWithAlloRule(ActionSymbol),
    #[error("program needs {passes} passes but max depth is {max_depth}")]
    DepthExceeded { passes: u32, max_depth: u32 },
    #[error("parse error at {line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

/// A single-symbol production `lhs -> rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RewriteRule {
    pub lhs: ActionSymbol,
    pub rhs: Vec<ActionSymbol>,
}

impl RewriteRule {
    pub fn new(lhs: ActionSymbol, rhs: Vec<ActionSymbol>) -> Result<Self, DslError> {
        if rhs.is_empty() {
            return Err(DslError::EmptyRhs(lhs));
        }
        Ok(RewriteRule { lhs, rhs })
    }

    pub fn is_allo_targeted(&self) -> bool {
        self.lhs.is_allo()
    }
}

/// A named set of rewrite rules implementing one manner of navigation.
///
/// Rules are keyed by lhs, so rewriting is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdverbProgram {
    name: Vec<String>,
    rules: BTreeMap<ActionSymbol, Vec<ActionSymbol>>,
    mode: Mode,
    passes: u32,
    plan_shape: PlanShape,
}

impl AdverbProgram {
    pub fn new(
        name: Vec<String>,
        rules: impl IntoIterator<Item = RewriteRule>,
        mode: Mode,
        passes: u32,
        plan_shape: PlanShape,
    ) -> Result<Self, DslError> {
        let mut map = BTreeMap::new();
        for rule in rules {
            if map.insert(rule.lhs, rule.rhs).is_some() {
                return Err(DslError::DuplicateLhs { symbol: rule.lhs, line: None });
            }
        }
        if passes == 0 {
            return Err(DslError::ZeroPasses);
        }
        match mode {
            Mode::Allocentric => {
                if plan_shape != PlanShape::Zigzag && !map.keys().any(|s| s.is_allo()) {
                    return Err(DslError::AllocentricWithoutAlloRule);
                }
            }
            Mode::Egocentric => {
                if let Some(s) = map.keys().find(|s| s.is_allo()) {
                    return Err(DslError::EgocentricWithAlloRule(*s));
                }
            }
        }
        Ok(AdverbProgram { name, rules: map, mode, passes, plan_shape })
    }

    pub fn name(&self) -> &[String] {
        &self.name
    }

    pub fn surface(&self) -> String {
        self.name.join(" ")
    }

    pub fn with_name(mut self, name: Vec<String>) -> Self {
        self.name = name;
        self
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn passes(&self) -> u32 {
        self.passes
    }

    pub fn with_passes(mut self, passes: u32) -> Result<Self, DslError> {
        if passes == 0 {
            return Err(DslError::ZeroPasses);
        }
        self.passes = passes;
        Ok(self)
    }

    pub fn plan_shape(&self) -> PlanShape {
        self.plan_shape
    }

    pub fn rule(&self, lhs: ActionSymbol) -> Option<&[ActionSymbol]> {
        self.rules.get(&lhs).map(Vec::as_slice)
    }

    /// Rules in canonical (lhs-name) order.
    pub fn rules(&self) -> impl Iterator<Item = (ActionSymbol, &[ActionSymbol])> {
        self.rules.iter().map(|(l, r)| (*l, r.as_slice()))
    }

    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }
}

/// Program equality up to naming: same rule set, mode, passes and plan shape.
pub fn programs_equal(a: &AdverbProgram, b: &AdverbProgram) -> bool {
    a.rules == b.rules && a.mode == b.mode && a.passes == b.passes && a.plan_shape == b.plan_shape
}
