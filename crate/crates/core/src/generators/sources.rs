//! Implicit samplers for distributions too large to enumerate.

use std::sync::Arc;

use rand::{Rng, RngCore};

use crate::bits::BitString;
use crate::distribution::Source;
use crate::error::{param, Result};
use crate::rng::sample_subset;

/// Independent per-coordinate flips of `center`, optionally conditioned on
/// at most `radius` flips (by rejection).
#[derive(Clone, Debug)]
pub struct ProductNoise {
    pub center: BitString,
    pub rates: Vec<f64>,
    pub radius: Option<usize>,
}

impl ProductNoise {
    pub fn uniform(center: BitString, rate: f64, radius: Option<usize>) -> Result<Self> {
        let n = center.len();
        Self::new(center, vec![rate; n], radius)
    }

    pub fn new(center: BitString, rates: Vec<f64>, radius: Option<usize>) -> Result<Self> {
        if rates.len() != center.len() {
            return param("one flip rate per coordinate");
        }
        if rates.iter().any(|r| !(0.0..=1.0).contains(r)) {
            return param("flip rates must lie in [0,1]");
        }
        if let Some(r) = radius {
            if truncation_mass(&rates, r) > 0.5 {
                return param(format!("more than half the mass lies beyond radius {r}"));
            }
        }
        Ok(ProductNoise { center, rates, radius })
    }

    fn draw_once(&self, rng: &mut dyn RngCore) -> (BitString, usize) {
        let mut x = self.center.clone();
        let mut flips = 0;
        for (i, &r) in self.rates.iter().enumerate() {
            if r > 0.0 && rng.random::<f64>() < r {
                x.flip(i);
                flips += 1;
            }
        }
        (x, flips)
    }
}

impl Source for ProductNoise {
    fn n(&self) -> usize {
        self.center.len()
    }

    fn draw(&self, rng: &mut dyn RngCore) -> BitString {
        loop {
            let (x, flips) = self.draw_once(rng);
            if self.radius.is_none_or(|r| flips <= r) {
                return x;
            }
        }
    }
}

/// `Pr[more than radius flips]` for independent flips with the given rates.
pub fn truncation_mass(rates: &[f64], radius: usize) -> f64 {
    // dist[k] = Pr[exactly k flips so far]
    let mut dist = vec![1.0];
    for &r in rates {
        let mut next = vec![0.0; dist.len() + 1];
        for (k, &p) in dist.iter().enumerate() {
            next[k] += p * (1.0 - r);
            next[k + 1] += p * r;
        }
        dist = next;
    }
    dist.iter().skip(radius + 1).sum()
}

/// Draws from `base` and flips exactly `flips` uniformly chosen coordinates.
#[derive(Clone, Debug)]
pub struct FixedFlips {
    pub base: Arc<dyn Source>,
    pub flips: usize,
}

impl Source for FixedFlips {
    fn n(&self) -> usize {
        self.base.n()
    }

    fn draw(&self, rng: &mut dyn RngCore) -> BitString {
        let mut x = self.base.draw(rng);
        for p in sample_subset(x.len(), self.flips, rng) {
            x.flip(p - 1);
        }
        x
    }
}

/// Finite mixture of sources.
#[derive(Clone, Debug)]
pub struct Mixture {
    parts: Vec<(f64, Arc<dyn Source>)>,
}

impl Mixture {
    pub fn new(parts: Vec<(f64, Arc<dyn Source>)>) -> Result<Self> {
        let Some(first) = parts.first() else {
            return param("empty mixture");
        };
        let n = first.1.n();
        if parts.iter().any(|(w, s)| s.n() != n || *w < 0.0) {
            return param("mixture parts must share n and have nonnegative weights");
        }
        let total: f64 = parts.iter().map(|p| p.0).sum();
        if (total - 1.0).abs() > 1e-9 {
            return param(format!("mixture weights sum to {total}"));
        }
        Ok(Mixture { parts })
    }
}

impl Source for Mixture {
    fn n(&self) -> usize {
        self.parts[0].1.n()
    }

    fn draw(&self, rng: &mut dyn RngCore) -> BitString {
        let mut u: f64 = rng.random();
        for (w, s) in &self.parts {
            if u < *w {
                return s.draw(rng);
            }
            u -= w;
        }
        self.parts[self.parts.len() - 1].1.draw(rng)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distribution::FiniteDistribution;
    use crate::rng::Seed;

    #[test]
    fn truncation_mass_binomial() {
        // n = 3, rate 1/2: Pr[K > 1] = 4/8
        assert!((truncation_mass(&[0.5; 3], 1) - 0.5).abs() < 1e-15);
        assert_eq!(truncation_mass(&[0.2; 4], 4), 0.0);
    }

    #[test]
    fn radius_respected() {
        let s = ProductNoise::uniform(BitString::zeros(64), 0.05, Some(3)).unwrap();
        let mut rng = Seed(1).rng();
        for _ in 0..500 {
            assert!(s.draw(&mut rng).weight() <= 3);
        }
        assert!(ProductNoise::uniform(BitString::zeros(64), 0.3, Some(3)).is_err());
    }

    #[test]
    fn fixed_flips_and_mixture() {
        let base: Arc<dyn Source> = Arc::new(FiniteDistribution::point_mass(BitString::zeros(40)));
        let f: Arc<dyn Source> = Arc::new(FixedFlips { base: base.clone(), flips: 8 });
        let m = Mixture::new(vec![(0.5, base), (0.5, f)]).unwrap();
        let mut rng = Seed(2).rng();
        let mut noisy = 0;
        for _ in 0..2000 {
            match m.draw(&mut rng).weight() {
                0 => {}
                8 => noisy += 1,
                w => panic!("unexpected weight {w}"),
            }
        }
        assert!((noisy as f64 / 2000.0 - 0.5).abs() < 0.05);
    }
}
