use crate::bits::BitString;
use crate::distribution::FiniteDistribution;
use crate::error::{param, Result};

use super::sources::{truncation_mass, ProductNoise};

/// Largest n for which [`perturb_dist`] enumerates outcomes.
pub const PERTURB_ENUM_GUARD: usize = 16;

/// Flip rate actually used: `eta * (1 - margin)` when truncation is active,
/// and 0 when the radius is 0 (the family is then the point mass).
pub fn effective_rate(n: usize, eta: f64, delta: f64, margin: f64) -> f64 {
    if radius(n, delta) == 0 {
        0.0
    } else if delta < 1.0 {
        eta * (1.0 - margin)
    } else {
        eta
    }
}

fn radius(n: usize, delta: f64) -> usize {
    ((delta * n as f64) + 1e-9).floor() as usize
}

fn check(eta: f64, delta: f64, margin: f64) -> Result<()> {
    if !(0.0..0.5).contains(&eta) {
        return param(format!("eta = {eta} outside [0, 0.5)"));
    }
    if !(0.0..=1.0).contains(&delta) {
        return param(format!("delta = {delta} outside [0, 1]"));
    }
    if !(0.0..1.0).contains(&margin) {
        return param(format!("margin = {margin} outside [0, 1)"));
    }
    Ok(())
}

/// Sampler for a member of the perturbation family around `center`:
/// independent flips, conditioned on at most `delta n` of them.
pub fn perturb_sampler(center: BitString, eta: f64, delta: f64, margin: f64) -> Result<ProductNoise> {
    check(eta, delta, margin)?;
    let n = center.len();
    ProductNoise::uniform(center, effective_rate(n, eta, delta, margin), Some(radius(n, delta)))
}

/// The same member, enumerated exactly (n up to [`PERTURB_ENUM_GUARD`]).
pub fn perturb_dist(center: &BitString, eta: f64, delta: f64, margin: f64) -> Result<FiniteDistribution> {
    check(eta, delta, margin)?;
    let n = center.len();
    if n > PERTURB_ENUM_GUARD {
        return param(format!("exact enumeration needs n <= {PERTURB_ENUM_GUARD}"));
    }
    let rate = effective_rate(n, eta, delta, margin);
    let r = radius(n, delta);
    if truncation_mass(&vec![rate; n], r) > 0.5 {
        return param(format!("more than half the mass lies beyond radius {r}"));
    }
    let mut masses = Vec::new();
    for pattern in 0..1u64 << n {
        let k = pattern.count_ones() as usize;
        if k > r {
            continue;
        }
        let w = rate.powi(k as i32) * (1.0 - rate).powi((n - k) as i32);
        if w > 0.0 {
            let flip = BitString::from_u64(pattern, n);
            masses.push((center.xor(&flip)?, w));
        }
    }
    FiniteDistribution::from_masses(n, masses)
}

/// `Pr[X_i != center_i]` for every coordinate.
pub fn flip_marginals(d: &FiniteDistribution, center: &BitString) -> Vec<f64> {
    let mut out = vec![0.0; d.n()];
    for (x, w) in d.atoms() {
        for (i, o) in out.iter_mut().enumerate() {
            if x.get(i) != center.get(i) {
                *o += w;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn degenerate_cases_are_point_masses() {
        let x = bs("01101001");
        assert_eq!(perturb_dist(&x, 0.0, 0.5, 0.0).unwrap(), FiniteDistribution::point_mass(x.clone()));
        assert_eq!(perturb_dist(&x, 0.2, 0.0, 0.0).unwrap(), FiniteDistribution::point_mass(x.clone()));
    }

    #[test]
    fn untruncated_marginals_exact() {
        let x = bs("01101001");
        let d = perturb_dist(&x, 0.1, 1.0, 0.3).unwrap();
        assert_eq!(d.support_size(), 256);
        for m in flip_marginals(&d, &x) {
            assert!((m - 0.1).abs() < 1e-12);
        }
    }

    #[test]
    fn truncated_marginals_bounded() {
        let x = bs("0110100111");
        let d = perturb_dist(&x, 0.2, 0.3, 0.01).unwrap();
        assert!(d.atoms().iter().all(|(y, _)| y.hamming(&x).unwrap() <= 3));
        assert!(flip_marginals(&d, &x).iter().all(|&m| m <= 0.2));
    }

    #[test]
    fn heavy_truncation_rejected() {
        assert!(perturb_dist(&BitString::zeros(10), 0.45, 0.1, 0.0).is_err());
        assert!(perturb_dist(&BitString::zeros(10), 0.5, 1.0, 0.0).is_err());
        assert!(perturb_sampler(BitString::zeros(64), 0.03, 0.05, 0.0).is_ok());
    }
}
