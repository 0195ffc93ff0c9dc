//! Testers and correctors for a single string, used inside the
//! distribution testers.

use rand::{Rng, RngCore};

use crate::constants;
use crate::error::{param, Result};
use crate::oracle::BitAccess;

/// A property tester for one string, reached through bit queries.
pub trait StringTester: Send + Sync {
    fn name(&self) -> &'static str;
    /// `Ok(true)` means accept.
    fn test(&self, x: &mut dyn BitAccess, eps: f64, rng: &mut dyn RngCore) -> Result<bool>;
    /// Exact number of reads one call to [`StringTester::test`] makes.
    fn queries(&self, n: usize, eps: f64) -> u64;
    fn one_sided(&self) -> bool;
}

/// Recovers bits of the nearest codeword, or `None` when it notices corruption.
pub trait SelfCorrector: Send + Sync {
    fn correct(&self, x: &mut dyn BitAccess, pos: usize, rng: &mut dyn RngCore) -> Result<Option<bool>>;
    /// Reads per call.
    fn queries(&self) -> u64;
}

fn reps(c: f64, eps: f64) -> u64 {
    ((c / eps).ceil() as u64).max(1)
}

fn log2_len(n: usize) -> Result<usize> {
    if n < 2 || !n.is_power_of_two() {
        return param(format!("length {n} is not a power of two"));
    }
    Ok(n.trailing_zeros() as usize)
}

/// Linearity test over `GF(2)^k` for strings of length `2^k`: position
/// `x + 1` holds `f(x)`. Each of `ceil(c / eps)` rounds checks
/// `f(a) + f(b) = f(a + b)` on fresh uniform `a, b`.
#[derive(Clone, Debug)]
pub struct BlrTester {
    pub c: f64,
}

impl Default for BlrTester {
    fn default() -> Self {
        BlrTester { c: constants::STRING_C }
    }
}

impl StringTester for BlrTester {
    fn name(&self) -> &'static str {
        "blr"
    }

    fn test(&self, x: &mut dyn BitAccess, eps: f64, rng: &mut dyn RngCore) -> Result<bool> {
        let n = x.len();
        log2_len(n)?;
        let mut ok = true;
        for _ in 0..reps(self.c, eps) {
            let a = rng.random_range(0..n);
            let b = rng.random_range(0..n);
            let fa = x.get(a + 1)?;
            let fb = x.get(b + 1)?;
            let fab = x.get((a ^ b) + 1)?;
            ok &= fa ^ fb == fab;
        }
        Ok(ok)
    }

    fn queries(&self, _n: usize, eps: f64) -> u64 {
        3 * reps(self.c, eps)
    }

    fn one_sided(&self) -> bool {
        true
    }
}

/// Tester for "all bits equal": each of `ceil(c / eps)` rounds compares two
/// uniform positions.
#[derive(Clone, Debug)]
pub struct AllEqualTester {
    pub c: f64,
}

impl Default for AllEqualTester {
    fn default() -> Self {
        AllEqualTester { c: constants::STRING_C }
    }
}

impl StringTester for AllEqualTester {
    fn name(&self) -> &'static str {
        "all-equal"
    }

    fn test(&self, x: &mut dyn BitAccess, eps: f64, rng: &mut dyn RngCore) -> Result<bool> {
        let n = x.len();
        let mut ok = true;
        for _ in 0..reps(self.c, eps) {
            let i = rng.random_range(1..=n);
            let j = rng.random_range(1..=n);
            ok &= x.get(i)? == x.get(j)?;
        }
        Ok(ok)
    }

    fn queries(&self, _n: usize, eps: f64) -> u64 {
        2 * reps(self.c, eps)
    }

    fn one_sided(&self) -> bool {
        true
    }
}

/// Hadamard self-corrector: `x(a + r) + x(r)` for uniform `r`, checked
/// against a second independent estimate; disagreement yields `None`.
#[derive(Clone, Debug, Default)]
pub struct HadamardCorrector;

impl SelfCorrector for HadamardCorrector {
    fn correct(&self, x: &mut dyn BitAccess, pos: usize, rng: &mut dyn RngCore) -> Result<Option<bool>> {
        let n = x.len();
        log2_len(n)?;
        if pos == 0 || pos > n {
            return param(format!("position {pos} out of range 1..={n}"));
        }
        let a = pos - 1;
        let mut estimate = || -> Result<bool> {
            let r = rng.random_range(0..n);
            Ok(x.get((a ^ r) + 1)? ^ x.get(r + 1)?)
        };
        let first = estimate()?;
        let second = estimate()?;
        Ok((first == second).then_some(first))
    }

    fn queries(&self) -> u64 {
        4
    }
}
