use rand::{Rng, RngCore};

use crate::bits::BitString;
use crate::distribution::FiniteDistribution;
use crate::error::{param, Result};

/// Probability of each shift `0..n`.
pub type ShiftLaw = Vec<f64>;

pub fn uniform_shift_law(n: usize) -> ShiftLaw {
    vec![1.0 / n as f64; n]
}

pub fn point_shift_law(n: usize, j: usize) -> ShiftLaw {
    let mut law = vec![0.0; n];
    law[j % n] = 1.0;
    law
}

pub fn validate_law(law: &[f64]) -> Result<()> {
    if law.is_empty() {
        return param("empty shift law");
    }
    if law.iter().any(|&p| !(0.0..=1.0).contains(&p)) {
        return param("shift probabilities must lie in [0,1]");
    }
    let total: f64 = law.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return param(format!("shift law sums to {total}"));
    }
    Ok(())
}

/// Whether `law(k) = law(k + i mod n)` for every `i` in the support and every `k`.
pub fn law_is_shift_invariant(law: &[f64]) -> bool {
    let n = law.len();
    law.iter().enumerate().filter(|(_, &p)| p > 0.0).all(|(i, _)| (0..n).all(|k| (law[k] - law[(k + i) % n]).abs() <= 1e-12))
}

pub fn sample_shift(law: &[f64], rng: &mut dyn RngCore) -> usize {
    let mut u: f64 = rng.random();
    for (j, &p) in law.iter().enumerate() {
        if u < p {
            return j;
        }
        u -= p;
    }
    law.iter().rposition(|&p| p > 0.0).unwrap_or(0)
}

/// Law of `x.rotate(J)` for `J` drawn from `law`; coinciding rotations merge.
pub fn shift_dist(x: &BitString, law: &[f64]) -> Result<FiniteDistribution> {
    if law.len() != x.len() {
        return param(format!("shift law has {} entries for n = {}", law.len(), x.len()));
    }
    validate_law(law)?;
    let masses = law.iter().enumerate().filter(|(_, &p)| p > 0.0).map(|(j, &p)| (x.rotate(j), p));
    FiniteDistribution::from_masses(x.len(), masses)
}

/// Exhaustive `min_j d(x, y.rotate(j))`, relative.
pub fn min_rotation_distance(x: &BitString, y: &BitString) -> Result<f64> {
    let n = x.len();
    let mut best = usize::MAX;
    for j in 0..n {
        best = best.min(x.hamming(&y.rotate(j))?);
    }
    Ok(best as f64 / n as f64)
}

/// Whether all n rotations of `x` are distinct.
pub fn is_aperiodic(x: &BitString) -> bool {
    (1..x.len()).all(|j| x.rotate(j) != *x)
}
