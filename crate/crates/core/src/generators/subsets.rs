use std::collections::BTreeSet;

use rand::{Rng, RngCore};

use crate::bits::BitString;
use crate::distribution::{FiniteDistribution, Source};
use crate::error::{param, Error, Result};

pub const YS_ENUM_GUARD: usize = 16;

pub fn random_string(n: usize, rng: &mut dyn RngCore) -> BitString {
    let mut x = BitString::zeros(n);
    for i in 0..n {
        if rng.random::<bool>() {
            x.set(i, true);
        }
    }
    x
}

fn ball_volume(n: usize, r: usize) -> f64 {
    let mut total = 0.0;
    let mut binom = 1.0;
    for k in 0..=r.min(n) {
        total += binom;
        binom = binom * (n - k) as f64 / (k + 1) as f64;
    }
    total
}

/// `count` random strings with pairwise relative distance at least `min_distance`.
pub fn pairwise_far_strings(n: usize, count: usize, min_distance: f64, rng: &mut dyn RngCore) -> Result<Vec<BitString>> {
    if n == 0 || count == 0 {
        return param("need n >= 1 and at least one string");
    }
    let d = (min_distance * n as f64 - 1e-9).ceil().max(0.0) as usize;
    // Hamming bound: balls of radius (d - 1) / 2 around the strings are disjoint.
    let r = d.saturating_sub(1) / 2;
    let capacity = (2.0f64).powi(n as i32) / ball_volume(n, r);
    if count as f64 > capacity || (n < 64 && count as u128 > 1u128 << n) {
        return Err(Error::Unsatisfiable(format!("{count} strings of length {n} cannot be {min_distance}-far pairwise")));
    }
    let attempts = 10_000 * count;
    let mut out: Vec<BitString> = Vec::with_capacity(count);
    for _ in 0..attempts {
        if out.len() == count {
            break;
        }
        let x = random_string(n, rng);
        if out.iter().all(|y| x.hamming_unchecked(y) >= d.max(1)) {
            out.push(x);
        }
    }
    if out.len() < count {
        return Err(Error::Unsatisfiable(format!("found only {} of {count} far strings in {attempts} draws", out.len())));
    }
    Ok(out)
}

/// Uniform over `m` random strings that are pairwise `min_distance`-far.
pub fn uniform_random_subset(n: usize, m: usize, min_distance: f64, rng: &mut dyn RngCore) -> Result<FiniteDistribution> {
    FiniteDistribution::uniform(pairwise_far_strings(n, m, min_distance, rng)?)
}

fn check_subset(s: &[BitString]) -> Result<usize> {
    let Some(first) = s.first() else {
        return param("empty subset");
    };
    let n = first.len();
    if s.iter().any(|x| x.len() != n) {
        return param("subset strings differ in length");
    }
    if s.iter().collect::<BTreeSet<_>>().len() != s.len() {
        return param("subset has repeated strings");
    }
    if n < 64 && s.len() as u128 >= 1u128 << n {
        return param("subset must leave a nonempty complement");
    }
    Ok(n)
}

/// Half uniform on `s`, half uniform on its complement (enumerated, n <= 16).
pub fn ys_mixture(s: &[BitString]) -> Result<FiniteDistribution> {
    let n = check_subset(s)?;
    if n > YS_ENUM_GUARD {
        return param(format!("enumeration needs n <= {YS_ENUM_GUARD}; use YsMixtureSource"));
    }
    let inside: BTreeSet<&BitString> = s.iter().collect();
    let outside = (1u64 << n) as f64 - s.len() as f64;
    let masses = (0..1u64 << n).map(|v| {
        let x = BitString::from_u64(v, n);
        let w = if inside.contains(&x) { 0.5 / s.len() as f64 } else { 0.5 / outside };
        (x, w)
    });
    FiniteDistribution::from_masses(n, masses)
}

/// Lazily sampled form of [`ys_mixture`]; the complement is sampled by rejection.
#[derive(Clone, Debug)]
pub struct YsMixtureSource {
    n: usize,
    set: Vec<BitString>,
}

impl YsMixtureSource {
    pub fn new(s: Vec<BitString>) -> Result<Self> {
        let n = check_subset(&s)?;
        let mut set = s;
        set.sort();
        Ok(YsMixtureSource { n, set })
    }
}

impl Source for YsMixtureSource {
    fn n(&self) -> usize {
        self.n
    }

    fn draw(&self, rng: &mut dyn RngCore) -> BitString {
        if rng.random::<bool>() {
            return self.set[rng.random_range(0..self.set.len())].clone();
        }
        loop {
            let x = random_string(self.n, rng);
            if self.set.binary_search(&x).is_err() {
                return x;
            }
        }
    }
}

/// Moves every atom to a fresh random string, keeping the weights.
pub fn relabel(p: &FiniteDistribution, rng: &mut dyn RngCore) -> Result<FiniteDistribution> {
    let n = p.n();
    if n < 64 && (p.support_size() as u128) > (1u128 << n) {
        return param("support exceeds the string space");
    }
    let mut used = BTreeSet::new();
    let mut atoms = Vec::with_capacity(p.support_size());
    for (_, w) in p.atoms() {
        let y = loop {
            let y = random_string(n, rng);
            if used.insert(y.clone()) {
                break y;
            }
        };
        atoms.push((y, *w));
    }
    FiniteDistribution::new(n, atoms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distances::tv;
    use crate::rng::Seed;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn subsets() {
        let mut rng = Seed(3).rng();
        assert_eq!(uniform_random_subset(10, 1, 0.3, &mut rng).unwrap().support_size(), 1);
        let d = uniform_random_subset(64, 8, 0.25, &mut rng).unwrap();
        let xs: Vec<_> = d.atoms().iter().map(|a| a.0.clone()).collect();
        for i in 0..8 {
            for j in 0..i {
                assert!(xs[i].hamming(&xs[j]).unwrap() >= 16);
            }
        }
        assert!(uniform_random_subset(3, 8, 0.5, &mut rng).is_err());
        assert!(uniform_random_subset(3, 9, 0.0, &mut rng).is_err());
        assert_eq!(uniform_random_subset(3, 8, 1.0 / 3.0, &mut rng).unwrap().support_size(), 8);
    }

    #[test]
    fn ys_examples() {
        let d = ys_mixture(&[bs("00")]).unwrap();
        assert!((d.weight_of(&bs("00")) - 0.5).abs() < 1e-15);
        for x in ["01", "10", "11"] {
            assert!((d.weight_of(&bs(x)) - 1.0 / 6.0).abs() < 1e-15);
        }
        let mut rng = Seed(4).rng();
        let s: Vec<BitString> = pairwise_far_strings(12, 4, 0.0, &mut rng).unwrap();
        let y = ys_mixture(&s).unwrap();
        let mass_on_s: f64 = s.iter().map(|x| y.weight_of(x)).sum();
        assert!((mass_on_s - 0.5).abs() < 1e-12);
        let u = FiniteDistribution::uniform(s).unwrap();
        assert!((tv(&y, &u).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn lazy_ys_half_on_set() {
        let s = vec![BitString::zeros(40), BitString::ones(40)];
        let src = YsMixtureSource::new(s.clone()).unwrap();
        let mut rng = Seed(5).rng();
        let hits = (0..4000).filter(|_| s.contains(&src.draw(&mut rng))).count();
        assert!((hits as f64 / 4000.0 - 0.5).abs() < 0.03);
    }

    #[test]
    fn relabel_keeps_weights() {
        let d = FiniteDistribution::new(6, vec![(BitString::zeros(6), 0.25), (BitString::ones(6), 0.75)]).unwrap();
        let r = relabel(&d, &mut Seed(6).rng()).unwrap();
        let mut w: Vec<f64> = r.atoms().iter().map(|a| a.1).collect();
        w.sort_by(f64::total_cmp);
        assert_eq!(w, vec![0.25, 0.75]);
    }
}
