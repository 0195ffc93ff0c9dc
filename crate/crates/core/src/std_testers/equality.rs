use std::collections::HashMap;
use std::hash::Hash;

use rand::RngCore;

use crate::constants;
use crate::error::{param, Result};
use crate::report::Verdict;
use crate::rng::poisson;

/// `Z = sum_v ((a_v - b_v)^2 - a_v - b_v)` over occurrence counts of the two sequences.
pub fn l2_statistic<T: Hash + Eq>(a: &[T], b: &[T]) -> f64 {
    let mut counts: HashMap<&T, (i64, i64)> = HashMap::with_capacity(a.len() + b.len());
    for x in a {
        counts.entry(x).or_insert((0, 0)).0 += 1;
    }
    for y in b {
        counts.entry(y).or_insert((0, 0)).1 += 1;
    }
    counts.values().map(|&(x, y)| ((x - y) * (x - y) - x - y) as f64).sum()
}

/// Poissonized closeness tester for two distributions, one of which has
/// support at most `m`.
///
/// Each side contributes `Poisson(lambda)` samples with
/// `lambda = c3 * max(eps^(-4/3) m^(2/3), eps^(-2) m^(1/2))`; the tester
/// accepts iff `Z < lambda^2 (eps / (2 sqrt m))^2 / 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct EqualityTester {
    pub m: usize,
    pub c3: f64,
}

impl EqualityTester {
    pub fn new(m: usize) -> Self {
        EqualityTester { m, c3: constants::EQUALITY_C3 }
    }

    pub fn lambda(&self, eps: f64) -> f64 {
        let m = self.m as f64;
        self.c3 * (eps.powf(-4.0 / 3.0) * m.powf(2.0 / 3.0)).max(m.sqrt() / (eps * eps))
    }

    pub fn threshold(&self, eps: f64) -> f64 {
        let l = self.lambda(eps);
        let gap = eps / (2.0 * (self.m as f64).sqrt());
        l * l * gap * gap / 2.0
    }

    /// Independent Poisson sample counts for the two sides.
    pub fn draw_counts(&self, eps: f64, rng: &mut dyn RngCore) -> (usize, usize) {
        let l = self.lambda(eps);
        (poisson(l, rng), poisson(l, rng))
    }

    /// Verdict and statistic. Errors when either side is empty.
    pub fn decide<T: Hash + Eq>(&self, a: &[T], b: &[T], eps: f64) -> Result<(Verdict, f64)> {
        if a.is_empty() || b.is_empty() {
            return param("equality tester needs at least one sample per side");
        }
        let z = l2_statistic(a, b);
        Ok((Verdict::from_accept(z < self.threshold(eps)), z))
    }
}
