use super::{collision_pattern, StdTester};
use crate::bits::BitString;
use crate::constants;
use crate::report::Verdict;

/// Accepts iff at most `m` distinct values were seen among `ceil(c * m / eps)` samples.
#[derive(Clone, Debug, PartialEq)]
pub struct SupportTester {
    pub m: usize,
    pub c: f64,
}

impl SupportTester {
    pub fn new(m: usize) -> Self {
        SupportTester { m, c: constants::STD_SUPPORT_C }
    }
}

impl StdTester for SupportTester {
    fn name(&self) -> &'static str {
        "std-support"
    }

    fn sample_complexity(&self, eps: f64) -> usize {
        ((self.c * self.m as f64 / eps).ceil() as usize).max(1)
    }

    fn decide(&self, samples: &[BitString], _eps: f64) -> Verdict {
        Verdict::from_accept(collision_pattern(samples).distinct() <= self.m)
    }

    fn one_sided(&self) -> bool {
        true
    }
}
