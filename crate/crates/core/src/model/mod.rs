//! Sparse multilinear energy functions over binary variables.
//!
//! An [`EnergyModel`] is a polynomial `C + Σ c_t Π_{v∈t} s_v` with `s ∈ {0,1}^N`.
//! Sign conventions live in the coefficients: encoders bake in any minus
//! signs, the model itself is convention-free.
//!
//! Terms are kept in a flat, lexicographically sorted list together with a
//! per-variable incidence index, so the update drive of one variable only
//! touches the terms that contain it.

mod exact;
mod io;

pub use exact::{exact_boltzmann, exact_minimum, state_from_index, ExactMinimum, MAX_EXACT_VARS};
pub use io::{read_model, write_model, parse_model};

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One term of an [`EnergyModel`]: a coefficient and its strictly increasing
/// variable tuple. The empty tuple is the constant offset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TermRef<'a> {
    pub coeff: f64,
    pub vars: &'a [u32],
}

/// Immutable sparse higher-order binary energy function.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyModel {
    num_vars: usize,
    constant: f64,
    coeffs: Vec<f64>,
    offsets: Vec<u32>,
    vars: Vec<u32>,
    inc_offsets: Vec<u32>,
    incidence: Vec<u32>,
    max_order: usize,
}

impl EnergyModel {
    pub fn builder(num_vars: usize) -> ModelBuilder {
        ModelBuilder::new(num_vars)
    }

    /// The zero polynomial on `num_vars` variables.
    pub fn zero(num_vars: usize) -> Self {
        ModelBuilder::new(num_vars).build()
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Number of non-constant terms.
    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Longest variable tuple present (0 for a constant model).
    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    /// The `i`th non-constant term.
    pub fn term(&self, i: usize) -> TermRef<'_> {
        let (lo, hi) = (self.offsets[i] as usize, self.offsets[i + 1] as usize);
        TermRef { coeff: self.coeffs[i], vars: &self.vars[lo..hi] }
    }

    /// All non-constant terms in sorted order.
    pub fn terms(&self) -> impl ExactSizeIterator<Item = TermRef<'_>> + '_ {
        (0..self.num_terms()).map(move |i| self.term(i))
    }

    /// Ids of the terms containing variable `k`.
    pub fn incident_terms(&self, k: usize) -> &[u32] {
        let (lo, hi) = (self.inc_offsets[k] as usize, self.inc_offsets[k + 1] as usize);
        &self.incidence[lo..hi]
    }

    /// Number of terms of each order, indexed by order.
    pub fn order_histogram(&self) -> Vec<usize> {
        let mut hist = vec![0; self.max_order + 1];
        if self.constant != 0.0 {
            hist[0] += 1;
        }
        for t in self.terms() {
            hist[t.vars.len()] += 1;
        }
        hist
    }

    fn check_state(&self, s: &[u8]) -> Result<()> {
        if s.len() != self.num_vars {
            return Err(Error::Dimension { expected: self.num_vars, actual: s.len() });
        }
        Ok(())
    }

    /// Energy of configuration `s`.
    pub fn energy(&self, s: &[u8]) -> Result<f64> {
        self.check_state(s)?;
        Ok(self.energy_unchecked(s))
    }

    pub(crate) fn energy_unchecked(&self, s: &[u8]) -> f64 {
        let mut e = self.constant;
        for i in 0..self.coeffs.len() {
            let (lo, hi) = (self.offsets[i] as usize, self.offsets[i + 1] as usize);
            if self.vars[lo..hi].iter().all(|&v| s[v as usize] != 0) {
                e += self.coeffs[i];
            }
        }
        e
    }

    /// Update drive `E(s | s_k = 0) − E(s | s_k = 1)` of variable `k`.
    pub fn update_drive(&self, s: &[u8], k: usize) -> Result<f64> {
        self.check_state(s)?;
        if k >= self.num_vars {
            return Err(Error::Index { index: k, len: self.num_vars });
        }
        Ok(self.drive_unchecked(s, k))
    }

    /// Sums `−c_t Π_{v≠k} s_v` over the terms containing `k`, abandoning a
    /// product at its first zero factor.
    #[inline]
    pub(crate) fn drive_unchecked(&self, s: &[u8], k: usize) -> f64 {
        let mut acc = 0.0;
        let k = k as u32;
        for &t in self.incident_terms(k as usize) {
            let t = t as usize;
            let (lo, hi) = (self.offsets[t] as usize, self.offsets[t + 1] as usize);
            if self.vars[lo..hi].iter().all(|&v| v == k || s[v as usize] != 0) {
                acc -= self.coeffs[t];
            }
        }
        acc
    }

    /// Copy of the model with every coefficient (and the constant) scaled.
    pub fn scaled(&self, factor: f64) -> Self {
        let mut b = ModelBuilder::new(self.num_vars);
        b.add_constant(self.constant * factor);
        for t in self.terms() {
            b.push_canonical(t.vars.to_vec(), t.coeff * factor);
        }
        b.build()
    }

    /// Substitutes clamped values: terms with a variable clamped to 0 vanish
    /// and variables clamped to 1 drop out of their tuples. Agrees with the
    /// original on every state the clamp admits.
    pub fn condition(&self, clamp: &ClampMask) -> Result<Self> {
        if clamp.len() != self.num_vars {
            return Err(Error::Dimension { expected: self.num_vars, actual: clamp.len() });
        }
        let mut b = ModelBuilder::new(self.num_vars);
        b.add_constant(self.constant);
        'terms: for t in self.terms() {
            let mut tuple = Vec::with_capacity(t.vars.len());
            for &v in t.vars {
                match clamp.get(v as usize) {
                    Clamp::Zero => continue 'terms,
                    Clamp::One => {}
                    Clamp::Free => tuple.push(v),
                }
            }
            if tuple.is_empty() {
                b.add_constant(t.coeff);
            } else {
                b.push_canonical(tuple, t.coeff);
            }
        }
        Ok(b.build())
    }

    /// Builder seeded with this model's terms, for extending a model.
    pub fn to_builder(&self) -> ModelBuilder {
        let mut b = ModelBuilder::new(self.num_vars);
        b.add_constant(self.constant);
        for t in self.terms() {
            b.push_canonical(t.vars.to_vec(), t.coeff);
        }
        b
    }
}

/// Anything usable as a variable index.
pub trait VarIndex: Copy {
    fn index(self) -> usize;
}

macro_rules! var_index {
    ($($t:ty),*) => {$(
        impl VarIndex for $t {
            #[inline]
            fn index(self) -> usize { self as usize }
        }
        impl VarIndex for &$t {
            #[inline]
            fn index(self) -> usize { *self as usize }
        }
    )*};
}
var_index!(usize, u32, u16, u8);

/// Accumulates terms, canonicalising each tuple and merging duplicates.
#[derive(Debug, Clone, Default)]
pub struct ModelBuilder {
    num_vars: usize,
    constant: f64,
    index: HashMap<Vec<u32>, usize>,
    entries: Vec<(Vec<u32>, f64)>,
}

impl ModelBuilder {
    pub fn new(num_vars: usize) -> Self {
        ModelBuilder { num_vars, ..Default::default() }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Grow the variable count; existing terms are unaffected.
    pub fn ensure_vars(&mut self, num_vars: usize) {
        self.num_vars = self.num_vars.max(num_vars);
    }

    pub fn add_constant(&mut self, c: f64) -> &mut Self {
        self.constant += c;
        self
    }

    /// Add `coeff · Π_{v∈vars} s_v`. Indices may come in any order; repeated
    /// indices collapse since `s² = s` for binary variables.
    pub fn add_term<I>(&mut self, coeff: f64, vars: I) -> Result<&mut Self>
    where
        I: IntoIterator,
        I::Item: VarIndex,
    {
        let mut tuple = Vec::new();
        for v in vars {
            let v = v.index();
            if v >= self.num_vars {
                return Err(Error::Index { index: v, len: self.num_vars });
            }
            tuple.push(v as u32);
        }
        tuple.sort_unstable();
        tuple.dedup();
        if tuple.is_empty() {
            self.constant += coeff;
        } else {
            self.push_canonical(tuple, coeff);
        }
        Ok(self)
    }

    fn push_canonical(&mut self, tuple: Vec<u32>, coeff: f64) {
        match self.index.get(&tuple) {
            Some(&i) => self.entries[i].1 += coeff,
            None => {
                self.index.insert(tuple.clone(), self.entries.len());
                self.entries.push((tuple, coeff));
            }
        }
    }

    pub fn build(self) -> EnergyModel {
        let ModelBuilder { num_vars, constant, mut entries, .. } = self;
        entries.retain(|(_, c)| *c != 0.0);
        entries.sort_by(|a, b| a.0.cmp(&b.0));

        let mut coeffs = Vec::with_capacity(entries.len());
        let mut offsets = Vec::with_capacity(entries.len() + 1);
        let mut vars = Vec::new();
        let mut degree = vec![0u32; num_vars + 1];
        let mut max_order = 0;
        offsets.push(0u32);
        for (tuple, c) in &entries {
            coeffs.push(*c);
            for &v in tuple {
                degree[v as usize + 1] += 1;
            }
            vars.extend_from_slice(tuple);
            offsets.push(vars.len() as u32);
            max_order = max_order.max(tuple.len());
        }
        for v in 0..num_vars {
            degree[v + 1] += degree[v];
        }
        let inc_offsets = degree;
        let mut fill = inc_offsets.clone();
        let mut incidence = vec![0u32; vars.len()];
        for (t, (tuple, _)) in entries.iter().enumerate() {
            for &v in tuple {
                incidence[fill[v as usize] as usize] = t as u32;
                fill[v as usize] += 1;
            }
        }
        EnergyModel { num_vars, constant, coeffs, offsets, vars, inc_offsets, incidence, max_order }
    }
}

/// A configuration of binary variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct State(Vec<u8>);

impl State {
    pub fn zeros(n: usize) -> Self {
        State(vec![0; n])
    }

    /// Builds a state from raw bits; any non-zero byte counts as 1.
    pub fn from_bits(bits: impl IntoIterator<Item = u8>) -> Self {
        State(bits.into_iter().map(|b| (b != 0) as u8).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> u8 {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, bit: u8) {
        self.0[i] = (bit != 0) as u8;
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [u8] {
        &mut self.0
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b != 0).count()
    }

    pub fn into_bits(self) -> Vec<u8> {
        self.0
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl AsRef<[u8]> for State {
    fn as_ref(&self) -> &[u8] {
        &self.0
    }
}

/// Sampling status of one variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Clamp {
    Free,
    Zero,
    One,
}

/// Per-variable clamp status. Clamped variables never change while sampling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClampMask(Vec<Clamp>);

impl ClampMask {
    pub fn all_free(n: usize) -> Self {
        ClampMask(vec![Clamp::Free; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Clamp {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, c: Clamp) {
        self.0[i] = c;
    }

    pub fn is_free(&self, i: usize) -> bool {
        self.0[i] == Clamp::Free
    }

    pub fn num_free(&self) -> usize {
        self.0.iter().filter(|c| **c == Clamp::Free).count()
    }

    pub fn free_vars(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, c)| **c == Clamp::Free).map(|(i, _)| i)
    }

    /// Overwrite the clamped positions of `s` with their clamp values.
    pub fn apply(&self, s: &mut State) {
        for (i, c) in self.0.iter().enumerate() {
            match c {
                Clamp::Zero => s.set(i, 0),
                Clamp::One => s.set(i, 1),
                Clamp::Free => {}
            }
        }
    }

    /// True when `s` agrees with every clamp.
    pub fn admits(&self, s: &[u8]) -> bool {
        self.0.iter().zip(s).all(|(c, &b)| match c {
            Clamp::Free => true,
            Clamp::Zero => b == 0,
            Clamp::One => b != 0,
        })
    }
}
