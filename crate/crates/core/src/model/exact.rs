use crate::error::{Error, Result};

use super::{EnergyModel, State};

/// Largest system the enumeration routines accept.
pub const MAX_EXACT_VARS: usize = 24;

const MAX_ARGMIN_KEPT: usize = 4096;

fn guard(model: &EnergyModel) -> Result<()> {
    if model.num_vars() > MAX_EXACT_VARS {
        return Err(Error::Capacity {
            what: format!("enumeration over {} variables", model.num_vars()),
            limit: MAX_EXACT_VARS,
        });
    }
    Ok(())
}

/// State with bit `v` of `index` as `s_v`.
pub fn state_from_index(index: u64, n: usize) -> State {
    State::from_bits((0..n).map(|v| ((index >> v) & 1) as u8))
}

/// Boltzmann probabilities `e^{−βE(s)}/Z` of all `2^N` states, indexed so
/// that bit `v` of the index is `s_v`. Each energy is evaluated directly.
pub fn exact_boltzmann(model: &EnergyModel, beta: f64) -> Result<Vec<f64>> {
    guard(model)?;
    let n = model.num_vars();
    let mut s = vec![0u8; n];
    let energies: Vec<f64> = (0..1u64 << n)
        .map(|x| {
            for (v, b) in s.iter_mut().enumerate() {
                *b = ((x >> v) & 1) as u8;
            }
            model.energy_unchecked(&s)
        })
        .collect();
    let emin = energies.iter().copied().fold(f64::INFINITY, f64::min);
    let mut p: Vec<f64> = energies.iter().map(|&e| (-beta * (e - emin)).exp()).collect();
    let z: f64 = p.iter().sum();
    for x in &mut p {
        *x /= z;
    }
    Ok(p)
}

/// Result of exhaustive minimisation.
#[derive(Debug, Clone)]
pub struct ExactMinimum {
    pub energy: f64,
    /// Minimising states (at most a few thousand are kept).
    pub argmin: Vec<State>,
    /// Total number of minimising states.
    pub degeneracy: u64,
}

/// Exhaustive minimum over all `2^N` states.
///
/// Walks the states in Gray-code order, updating the energy by one update
/// drive per step; the minimisers are re-scored exactly at the end.
pub fn exact_minimum(model: &EnergyModel) -> Result<ExactMinimum> {
    guard(model)?;
    let n = model.num_vars();
    let mut s = vec![0u8; n];
    let mut e = model.energy_unchecked(&s);
    let scale = 1.0 + model.terms().map(|t| t.coeff.abs()).sum::<f64>() + model.constant().abs();
    let tol = 1e-9 * scale;

    let mut best = e;
    let mut argmin: Vec<u64> = vec![0];
    let mut degeneracy = 1u64;
    let mut gray = 0u64;
    for i in 1..(1u64 << n) {
        let bit = i.trailing_zeros() as usize;
        let drive = model.drive_unchecked(&s, bit);
        if s[bit] == 0 {
            s[bit] = 1;
            e -= drive;
        } else {
            s[bit] = 0;
            e += drive;
        }
        gray ^= 1 << bit;
        if e < best - tol {
            best = e;
            argmin.clear();
            argmin.push(gray);
            degeneracy = 1;
        } else if e <= best + tol {
            degeneracy += 1;
            if argmin.len() < MAX_ARGMIN_KEPT {
                argmin.push(gray);
            }
            best = best.min(e);
        }
    }

    let mut states: Vec<(f64, State)> = argmin
        .into_iter()
        .map(|x| {
            let st = state_from_index(x, n);
            (model.energy_unchecked(st.as_slice()), st)
        })
        .collect();
    let exact = states.iter().map(|(e, _)| *e).fold(f64::INFINITY, f64::min);
    states.retain(|(e, _)| *e <= exact + tol);
    states.sort_by(|a, b| a.1.as_slice().cmp(b.1.as_slice()));
    Ok(ExactMinimum { energy: exact, argmin: states.into_iter().map(|(_, s)| s).collect(), degeneracy })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn linear(n: usize, c: f64) -> EnergyModel {
        let mut b = EnergyModel::builder(n);
        b.add_term(c, [0u32]).unwrap();
        b.build()
    }

    #[test]
    fn single_variable_tables() {
        let p = exact_boltzmann(&linear(1, 1.0), 0.0).unwrap();
        assert_eq!(p, vec![0.5, 0.5]);
        let p = exact_boltzmann(&linear(1, 1.0), 3f64.ln()).unwrap();
        assert!((p[0] - 0.75).abs() < 1e-15 && (p[1] - 0.25).abs() < 1e-15);
    }

    #[test]
    fn constant_model_is_uniform() {
        let mut b = EnergyModel::builder(3);
        b.add_constant(4.0);
        let p = exact_boltzmann(&b.build(), 2.0).unwrap();
        assert!(p.iter().all(|&x| (x - 0.125).abs() < 1e-15));
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn capacity_guard() {
        let m = EnergyModel::zero(MAX_EXACT_VARS + 1);
        assert!(matches!(exact_boltzmann(&m, 1.0), Err(Error::Capacity { .. })));
        assert!(matches!(exact_minimum(&m), Err(Error::Capacity { .. })));
    }

    #[test]
    fn gray_walk_agrees_with_direct_scan() {
        let mut b = EnergyModel::builder(5);
        b.add_term(-3.0, [0u32, 1, 2]).unwrap();
        b.add_term(2.0, [1u32, 3]).unwrap();
        b.add_term(-1.5, [4u32]).unwrap();
        b.add_term(0.5, [0u32, 4]).unwrap();
        let m = b.build();
        let direct: Vec<f64> =
            (0..32u64).map(|x| m.energy(state_from_index(x, 5).as_slice()).unwrap()).collect();
        let min = direct.iter().copied().fold(f64::INFINITY, f64::min);
        let count = direct.iter().filter(|&&e| e == min).count() as u64;
        let got = exact_minimum(&m).unwrap();
        assert_eq!(got.energy, min);
        assert_eq!(got.degeneracy, count);
        for s in &got.argmin {
            assert_eq!(m.energy(s.as_slice()).unwrap(), min);
        }
    }
}
