use rand::seq::SliceRandom;
use rand::Rng;

use super::types::{AdverbType, MetaGrammarConfig};
use super::MetaError;
use crate::dsl::{allocentric_prefix_program, egocentric_prefix_program, AdverbProgram, Mode, PlanShape, RewriteRule};
use crate::gridworld::{net_rotation, ActionSymbol, Heading};

impl MetaGrammarConfig {
    pub fn validate(&self) -> Result<(), MetaError> {
        let w = &self.type_weights;
        let all = [w.spinning, w.cautiously, w.detour, w.zigzag];
        if all.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(MetaError::InvalidConfig("type weights must be finite and nonnegative".into()));
        }
        if w.zigzag != 0.0 {
            return Err(MetaError::InvalidConfig("zigzag_type cannot be sampled; its weight must be 0".into()));
        }
        if w.spinning + w.cautiously + w.detour <= 0.0 {
            return Err(MetaError::InvalidConfig("type weights sum to zero".into()));
        }
        if self.prefix_len_min > self.prefix_len_max || self.even_prefix_lengths().is_empty() {
            return Err(MetaError::InvalidConfig(format!(
                "prefix length range {}..={} holds no even length >= 2",
                self.prefix_len_min, self.prefix_len_max
            )));
        }
        if self.detour_rhs_max < 3 {
            return Err(MetaError::InvalidConfig("detour_rhs_max must be at least 3".into()));
        }
        Ok(())
    }

    /// A turn-only prefix returns the heading only if its length is even.
    fn even_prefix_lengths(&self) -> Vec<usize> {
        (self.prefix_len_min.max(2)..=self.prefix_len_max).filter(|n| n % 2 == 0).collect()
    }

    /// Draws a sampled type in proportion to the (normalized) weights.
    pub fn sample_type<R: Rng + ?Sized>(&self, rng: &mut R) -> AdverbType {
        let w = &self.type_weights;
        let total = w.spinning + w.cautiously + w.detour;
        let x = rng.gen::<f64>() * total;
        if x < w.spinning {
            AdverbType::Spinning
        } else if x < w.spinning + w.cautiously || w.detour == 0.0 {
            AdverbType::Cautiously
        } else {
            AdverbType::Detour
        }
    }
}

/// A random turn sequence of `len` symbols with zero net rotation.
fn net_zero_turns<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<ActionSymbol> {
    loop {
        let seq: Vec<ActionSymbol> = (0..len)
            .map(|_| if rng.gen::<bool>() { ActionSymbol::TurnLeft } else { ActionSymbol::TurnRight })
            .collect();
        if net_rotation(&seq) == 0 {
            return seq;
        }
    }
}

fn perpendicular(d: Heading) -> [Heading; 2] {
    [d.turn_left(), d.turn_right()]
}

/// `Q^m D Q'^m` with `Q` perpendicular to `D` and `Q'` its opposite.
fn detour_rhs<R: Rng + ?Sized>(rng: &mut R, d: Heading, max_len: usize) -> Vec<ActionSymbol> {
    let q = *perpendicular(d).choose(rng).expect("two perpendiculars");
    let m = rng.gen_range(1..=(max_len - 1) / 2);
    let mut rhs = vec![q.allo_symbol(); m];
    rhs.push(d.allo_symbol());
    rhs.extend(std::iter::repeat_n(q.opposite().allo_symbol(), m));
    rhs
}

/// Samples an unnamed program of the requested type.
pub fn sample_program<R: Rng + ?Sized>(
    rng: &mut R,
    ty: AdverbType,
    cfg: &MetaGrammarConfig,
) -> Result<AdverbProgram, MetaError> {
    cfg.validate()?;
    match ty {
        AdverbType::Zigzag => Err(MetaError::ZigzagNotSampled),
        AdverbType::Spinning | AdverbType::Cautiously => {
            let len = *cfg.even_prefix_lengths().choose(rng).expect("validated nonempty");
            let prefix = net_zero_turns(rng, len);
            Ok(if ty == AdverbType::Spinning {
                allocentric_prefix_program(vec![], &prefix, true)
            } else {
                egocentric_prefix_program(vec![], &prefix)
            })
        }
        AdverbType::Detour => {
            let subset: Vec<Heading> = loop {
                let s: Vec<Heading> = Heading::ALL.iter().copied().filter(|_| rng.gen::<bool>()).collect();
                if !s.is_empty() {
                    break s;
                }
            };
            let rules: Vec<RewriteRule> = subset
                .into_iter()
                .map(|d| RewriteRule { lhs: d.allo_symbol(), rhs: detour_rhs(rng, d, cfg.detour_rhs_max) })
                .collect();
            Ok(AdverbProgram::new(vec![], rules, Mode::Allocentric, 1, PlanShape::Canonical)
                .expect("valid by construction"))
        }
    }
}
