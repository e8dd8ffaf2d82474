//! The stochastic binary unit.
//!
//! A p-bit with update drive `I` at inverse temperature `β` takes the value 1
//! with probability `σ(βI)`. Since `I = E(s|0) − E(s|1)`, this is exactly the
//! Boltzmann conditional `p(s_k = 1 | rest)`, so single-site updates are
//! Gibbs sampling.

/// Numerically stable logistic function.
#[inline]
pub fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// Probability that a p-bit with the given drive reads 1.
#[inline]
pub fn prob_one(drive: f64, beta: f64) -> f64 {
    // β = 0 means infinite temperature, even for an infinite drive.
    if beta == 0.0 {
        return 0.5;
    }
    sigmoid(beta * drive)
}

/// Sample a p-bit: 1 iff `u < σ(β·drive)`, with `u` uniform on `[0, 1)`.
#[inline]
pub fn pbit_update(drive: f64, beta: f64, u: f64) -> u8 {
    (u < prob_one(drive, beta)) as u8
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_and_infinite_temperature_cases() {
        assert_eq!(prob_one(0.0, 7.0), 0.5);
        assert_eq!(prob_one(123.0, 0.0), 0.5);
        assert_eq!(prob_one(f64::INFINITY, 0.0), 0.5);
        assert_eq!(pbit_update(0.0, 1.0, 0.49), 1);
        assert_eq!(pbit_update(0.0, 1.0, 0.5), 0);
    }

    #[test]
    fn saturation() {
        assert_eq!(prob_one(f64::INFINITY, 1.0), 1.0);
        assert_eq!(prob_one(f64::NEG_INFINITY, 1.0), 0.0);
        assert!(prob_one(1e3, 1.0) == 1.0);
        assert_eq!(pbit_update(1e3, 1.0, 0.999_999), 1);
        assert_eq!(pbit_update(-1e3, 1.0, 0.0), 0);
    }

    #[test]
    fn sigmoid_is_stable_in_both_tails() {
        assert!(sigmoid(-800.0) >= 0.0 && sigmoid(-800.0) < 1e-300);
        assert_eq!(sigmoid(800.0), 1.0);
        assert!((sigmoid(3f64.ln()) - 0.75).abs() < 1e-15);
    }
}
