//! The query-billed sampling oracle.
//!
//! Testers never see a [`FiniteDistribution`] or a drawn string: they hold
//! opaque [`SampleHandle`]s and read single bits through [`BilledOracle::query`].
//! Positions are 1-based. A `(handle, position)` pair is billed once no
//! matter how often it is read; raw probes are counted separately.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use serde::Serialize;
use smallvec::{smallvec, SmallVec};

use crate::bits::BitString;
use crate::distribution::{FiniteDistribution, Source};
use crate::error::{Error, Result};
use crate::rng::{Seed, TesterRng};

static NEXT_ORACLE_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SampleHandle {
    oracle: u64,
    index: usize,
    which: usize,
}

impl SampleHandle {
    /// Draw index within the owning oracle.
    pub fn index(&self) -> usize {
        self.index
    }

    /// Index of the distribution the sample came from.
    pub fn which(&self) -> usize {
        self.which
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub samples: Vec<usize>,
    pub queries: u64,
}

struct Drawn {
    bits: BitString,
    seen: SmallVec<[u64; 4]>,
}

pub struct BilledOracle {
    id: u64,
    n: usize,
    sources: Vec<Arc<dyn Source>>,
    rng: TesterRng,
    drawn: Vec<Drawn>,
    samples: Vec<usize>,
    queries: u64,
    probes: u64,
}

impl std::fmt::Debug for BilledOracle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BilledOracle")
            .field("id", &self.id)
            .field("n", &self.n)
            .field("samples", &self.samples)
            .field("queries", &self.queries)
            .finish()
    }
}

impl BilledOracle {
    pub fn new(sources: Vec<Arc<dyn Source>>, seed: Seed) -> Result<Self> {
        if sources.is_empty() || sources.len() > 2 {
            return Err(Error::InvalidParameter(format!("an oracle holds 1 or 2 distributions, got {}", sources.len())));
        }
        let n = sources[0].n();
        if let Some(s) = sources.iter().find(|s| s.n() != n) {
            return Err(Error::LengthMismatch { left: n, right: s.n() });
        }
        Ok(BilledOracle {
            id: NEXT_ORACLE_ID.fetch_add(1, Ordering::Relaxed),
            n,
            samples: vec![0; sources.len()],
            sources,
            rng: seed.rng(),
            drawn: Vec::new(),
            queries: 0,
            probes: 0,
        })
    }

    pub fn single(d: FiniteDistribution, seed: Seed) -> Self {
        Self::new(vec![Arc::new(d)], seed).expect("one source")
    }

    pub fn pair(x: FiniteDistribution, y: FiniteDistribution, seed: Seed) -> Result<Self> {
        Self::new(vec![Arc::new(x), Arc::new(y)], seed)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_distributions(&self) -> usize {
        self.sources.len()
    }

    pub fn draw_samples(&mut self, which: usize, s: usize) -> Result<Vec<SampleHandle>> {
        if which >= self.sources.len() {
            return Err(Error::BadDistribution { index: which, count: self.sources.len() });
        }
        if s == 0 {
            return Err(Error::EmptyDraw);
        }
        let words = self.n.div_ceil(64);
        let mut out = Vec::with_capacity(s);
        for _ in 0..s {
            let bits = self.sources[which].draw(&mut self.rng);
            debug_assert_eq!(bits.len(), self.n);
            out.push(SampleHandle { oracle: self.id, index: self.drawn.len(), which });
            self.drawn.push(Drawn { bits, seen: smallvec![0; words] });
        }
        self.samples[which] += s;
        Ok(out)
    }

    pub fn draw_one(&mut self, which: usize) -> Result<SampleHandle> {
        Ok(self.draw_samples(which, 1)?[0])
    }

    fn check(&self, h: SampleHandle, pos: usize) -> Result<()> {
        if h.oracle != self.id || h.index >= self.drawn.len() {
            return Err(Error::ForeignHandle { handle: h.oracle, oracle: self.id });
        }
        if pos == 0 || pos > self.n {
            return Err(Error::PositionOutOfRange { pos, n: self.n });
        }
        Ok(())
    }

    /// Bit `pos` (1-based) of the sample behind `h`.
    pub fn query(&mut self, h: SampleHandle, pos: usize) -> Result<bool> {
        self.check(h, pos)?;
        Ok(self.read(h.index, pos - 1))
    }

    #[inline]
    fn read(&mut self, index: usize, i: usize) -> bool {
        let d = &mut self.drawn[index];
        let bit = 1u64 << (i & 63);
        let w = &mut d.seen[i >> 6];
        if *w & bit == 0 {
            *w |= bit;
            self.queries += 1;
        }
        self.probes += 1;
        d.bits.get(i)
    }

    /// Queries every position of `j` (1-based) and returns the bits in order.
    /// Billing is identical to issuing the queries one by one.
    pub fn restrict(&mut self, h: SampleHandle, j: &[usize]) -> Result<BitString> {
        let mut out = BitString::zeros(j.len());
        for (k, &pos) in j.iter().enumerate() {
            self.check(h, pos)?;
            if self.read(h.index, pos - 1) {
                out.set(k, true);
            }
        }
        Ok(out)
    }

    /// Reads the whole sample, billing every position.
    pub fn read_all(&mut self, h: SampleHandle) -> Result<BitString> {
        let all: Vec<usize> = (1..=self.n).collect();
        self.restrict(h, &all)
    }

    pub fn budget(&self) -> Budget {
        Budget { samples: self.samples.clone(), queries: self.queries }
    }

    pub fn samples_drawn(&self) -> usize {
        self.samples.iter().sum()
    }

    pub fn queries_made(&self) -> u64 {
        self.queries
    }

    /// Reads issued, including repeats that were not billed.
    pub fn probes_made(&self) -> u64 {
        self.probes
    }
}

/// Bit-level access to one string, as seen by a string tester or corrector.
pub trait BitAccess {
    fn len(&self) -> usize;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
    /// Bit at 1-based position `pos`.
    fn get(&mut self, pos: usize) -> Result<bool>;
}

/// One oracle sample viewed as a string.
pub struct SampleAccess<'a> {
    pub oracle: &'a mut BilledOracle,
    pub handle: SampleHandle,
}

impl BitAccess for SampleAccess<'_> {
    fn len(&self) -> usize {
        self.oracle.n()
    }

    fn get(&mut self, pos: usize) -> Result<bool> {
        self.oracle.query(self.handle, pos)
    }
}

/// A locally held string with a read counter; used for emulated access and in tests.
#[derive(Clone, Debug)]
pub struct CountingAccess {
    pub bits: BitString,
    pub reads: u64,
}

impl CountingAccess {
    pub fn new(bits: BitString) -> Self {
        CountingAccess { bits, reads: 0 }
    }
}

impl BitAccess for CountingAccess {
    fn len(&self) -> usize {
        self.bits.len()
    }

    fn get(&mut self, pos: usize) -> Result<bool> {
        if pos == 0 || pos > self.bits.len() {
            return Err(Error::PositionOutOfRange { pos, n: self.bits.len() });
        }
        self.reads += 1;
        Ok(self.bits.get(pos - 1))
    }
}
