//! Standard-model testers: they see whole samples.
//!
//! These are the engines the huge-object testers run on restricted samples.
//! All of them are label-invariant: their verdicts depend only on how often
//! each value occurs, never on the values themselves.

mod equality;
mod grained;
mod support;

use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::report::Verdict;

pub use equality::{l2_statistic, EqualityTester};
pub use grained::GrainedTester;
pub use support::SupportTester;

/// `counts[i - 1]` is the number of values occurring exactly `i` times.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollisionPattern {
    pub counts: Vec<usize>,
}

impl CollisionPattern {
    /// `c_i`, or 0 when `i` is out of range.
    pub fn c(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.counts.get(i - 1).copied().unwrap_or(0)
        }
    }

    pub fn distinct(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn total(&self) -> usize {
        self.counts.iter().enumerate().map(|(i, c)| (i + 1) * c).sum()
    }
}

pub fn multiplicities<T: Hash + Eq>(samples: &[T]) -> HashMap<&T, usize> {
    let mut m = HashMap::with_capacity(samples.len());
    for x in samples {
        *m.entry(x).or_insert(0) += 1;
    }
    m
}

pub fn collision_pattern<T: Hash + Eq>(samples: &[T]) -> CollisionPattern {
    let mut counts = vec![0; samples.len()];
    for (_, k) in multiplicities(samples) {
        counts[k - 1] += 1;
    }
    CollisionPattern { counts }
}

/// A tester in the standard model for a label-invariant property.
pub trait StdTester: Send + Sync {
    fn name(&self) -> &'static str;
    /// Samples needed at proximity `eps`.
    fn sample_complexity(&self, eps: f64) -> usize;
    /// Verdict on exactly `sample_complexity(eps)` samples.
    fn decide(&self, samples: &[BitString], eps: f64) -> Verdict;
    fn one_sided(&self) -> bool;
}
