use std::collections::{HashMap, HashSet};

use super::StdTester;
use crate::bits::BitString;
use crate::constants;
use crate::report::Verdict;

/// Tester for being `m`-grained.
///
/// Phase 1 collects the set `W` of values seen in `ceil(c1 m L)` samples,
/// phase 2 estimates their weights from `ceil(c2 m L / eps^2)` further
/// samples, with `L = max(ln m, 1)`. It accepts iff every phase-2 sample lies
/// in `W` and every estimate of at least `(1 - 0.1 eps) / 2m` is within a
/// `1 +- 0.1 eps` factor of a positive multiple of `1/m`.
#[derive(Clone, Debug, PartialEq)]
pub struct GrainedTester {
    pub m: usize,
    pub c1: f64,
    pub c2: f64,
}

impl GrainedTester {
    pub fn new(m: usize) -> Self {
        GrainedTester { m, c1: constants::GRAINED_C1, c2: constants::GRAINED_C2 }
    }

    fn log_m(&self) -> f64 {
        (self.m as f64).ln().max(1.0)
    }

    pub fn phase1(&self) -> usize {
        ((self.c1 * self.m as f64 * self.log_m()).ceil() as usize).max(1)
    }

    pub fn phase2(&self, eps: f64) -> usize {
        ((self.c2 * self.m as f64 * self.log_m() / (eps * eps)).ceil() as usize).max(1)
    }

    /// Whether `p` lies within a `1 +- 0.1 eps` factor of some `k/m`, `k >= 1`.
    pub fn near_multiple(&self, p: f64, eps: f64) -> bool {
        let m = self.m as f64;
        let k0 = (p * m).round().max(1.0);
        [k0 - 1.0, k0, k0 + 1.0]
            .into_iter()
            .filter(|&k| k >= 1.0)
            .any(|k| (p - k / m).abs() <= 0.1 * eps * k / m)
    }
}

impl StdTester for GrainedTester {
    fn name(&self) -> &'static str {
        "std-grained"
    }

    fn sample_complexity(&self, eps: f64) -> usize {
        self.phase1() + self.phase2(eps)
    }

    fn decide(&self, samples: &[BitString], eps: f64) -> Verdict {
        let s1 = self.phase1().min(samples.len());
        let (first, second) = samples.split_at(s1);
        let w: HashSet<&BitString> = first.iter().collect();
        let mut counts: HashMap<&BitString, usize> = HashMap::new();
        for x in second {
            if !w.contains(x) {
                return Verdict::Reject;
            }
            *counts.entry(x).or_insert(0) += 1;
        }
        let s2 = second.len().max(1) as f64;
        let floor = (1.0 - 0.1 * eps) / (2.0 * self.m as f64);
        for x in &w {
            let p = counts.get(x).copied().unwrap_or(0) as f64 / s2;
            if p >= floor && !self.near_multiple(p, eps) {
                return Verdict::Reject;
            }
        }
        Verdict::Accept
    }

    fn one_sided(&self) -> bool {
        false
    }
}
