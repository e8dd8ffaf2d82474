//! Higher-order to quadratic reduction by pairwise substitution.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{EnergyModel, State};

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratisationResult {
    pub model: EnergyModel,
    pub num_original: usize,
    /// `aux_pairs[a]` is the pair replaced by variable `num_original + a`.
    pub aux_pairs: Vec<(u32, u32)>,
    pub strength: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratisationSummary {
    pub num_original: usize,
    pub num_aux: usize,
    pub num_vars: usize,
    pub strength: f64,
    pub max_order: usize,
}

impl QuadratisationResult {
    pub fn num_aux(&self) -> usize {
        self.aux_pairs.len()
    }

    pub fn summary(&self) -> QuadratisationSummary {
        QuadratisationSummary {
            num_original: self.num_original,
            num_aux: self.num_aux(),
            num_vars: self.model.num_vars(),
            strength: self.strength,
            max_order: self.model.max_order(),
        }
    }

    /// Appends auxiliaries set to the products they stand for.
    pub fn extend_state(&self, s: &[u8]) -> Result<State> {
        if s.len() != self.num_original {
            return Err(Error::Dimension { expected: self.num_original, actual: s.len() });
        }
        let mut full = s.to_vec();
        for &(a, b) in &self.aux_pairs {
            full.push(full[a as usize] & full[b as usize]);
        }
        Ok(State::from_bits(full))
    }

    /// Drops the auxiliaries.
    pub fn project(&self, s: &[u8]) -> State {
        State::from_bits(s[..self.num_original].iter().copied())
    }
}

/// `ab − 2(a+b)y + 3y`: zero when `y = ab`, at least 1 otherwise.
pub fn rosenberg_penalty(a: u8, b: u8, y: u8) -> f64 {
    let (a, b, y) = (a as f64, b as f64, y as f64);
    a * b - 2.0 * (a + b) * y + 3.0 * y
}

/// Reduces every term of order above two. Each tuple `(v1, …, vk)` is folded
/// left: `y1 = v1·v2`, `y2 = y1·v3`, … until a pair remains. Identical pairs
/// share one auxiliary across the whole model.
///
/// Without an explicit `strength`, the default is `1 + 2·S` where `S` is the
/// largest total `|coeff|` of the terms routed through any one auxiliary.
pub fn quadratise(model: &EnergyModel, strength: Option<f64>) -> Result<QuadratisationResult> {
    if let Some(s) = strength {
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::Config(format!("quadratisation strength must be positive, got {s}")));
        }
    }
    let n = model.num_vars();
    let mut pairs: HashMap<(u32, u32), u32> = HashMap::new();
    let mut aux_pairs: Vec<(u32, u32)> = Vec::new();
    let mut load: Vec<f64> = Vec::new();
    let mut reduced: Vec<(Vec<u32>, f64)> = Vec::with_capacity(model.num_terms());
    for t in model.terms() {
        if t.vars.len() <= 2 {
            reduced.push((t.vars.to_vec(), t.coeff));
            continue;
        }
        let mut acc = t.vars[0];
        for &v in &t.vars[1..t.vars.len() - 1] {
            let key = (acc.min(v), acc.max(v));
            let id = *pairs.entry(key).or_insert_with(|| {
                aux_pairs.push(key);
                load.push(0.0);
                (n + aux_pairs.len() - 1) as u32
            });
            load[id as usize - n] += t.coeff.abs();
            acc = id;
        }
        reduced.push((vec![acc, *t.vars.last().expect("order > 2")], t.coeff));
    }
    let strength = strength.unwrap_or_else(|| 1.0 + 2.0 * load.iter().copied().fold(0.0, f64::max));
    let mut b = EnergyModel::builder(n + aux_pairs.len());
    b.add_constant(model.constant());
    for (vars, c) in reduced {
        b.add_term(c, vars)?;
    }
    for (i, &(x, y)) in aux_pairs.iter().enumerate() {
        let z = (n + i) as u32;
        b.add_term(strength, [x, y])?;
        b.add_term(-2.0 * strength, [x, z])?;
        b.add_term(-2.0 * strength, [y, z])?;
        b.add_term(3.0 * strength, [z])?;
    }
    Ok(QuadratisationResult { model: b.build(), num_original: n, aux_pairs, strength })
}
