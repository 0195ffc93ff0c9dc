//! Seeding contract.
//!
//! Every random choice in the crate flows from a [`Seed`]. Child seeds are
//! derived with the SplitMix64 finalizer, and generators are ChaCha8 streams
//! seeded from the 64-bit value, so results are identical across platforms.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub type TesterRng = ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seed(pub u64);

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl Seed {
    /// Independent child seed for `stream`.
    pub fn derive(self, stream: u64) -> Seed {
        Seed(splitmix64(self.0 ^ splitmix64(stream.wrapping_add(0x632B_E59B_D9B4_E019))))
    }

    pub fn rng(self) -> TesterRng {
        ChaCha8Rng::seed_from_u64(self.0)
    }
}

/// Uniform `l`-subset of `{1, ..., n}` by Floyd's algorithm, sorted ascending.
pub fn sample_subset<R: RngCore + ?Sized>(n: usize, l: usize, rng: &mut R) -> Vec<usize> {
    assert!(l <= n, "cannot draw {l} distinct positions out of {n}");
    let mut chosen = std::collections::HashSet::with_capacity(l);
    let mut out = Vec::with_capacity(l);
    for j in (n - l + 1)..=n {
        let t = rng.random_range(1..=j);
        let pick = if chosen.contains(&t) { j } else { t };
        chosen.insert(pick);
        out.push(pick);
    }
    out.sort_unstable();
    out
}

/// Poisson draw as a count.
pub fn poisson<R: RngCore + ?Sized>(lambda: f64, rng: &mut R) -> usize {
    use rand_distr::{Distribution, Poisson};
    if lambda <= 0.0 {
        return 0;
    }
    let d = Poisson::new(lambda).expect("positive finite Poisson mean");
    d.sample(rng) as usize
}
