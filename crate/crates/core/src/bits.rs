//! Fixed-length bit strings.
//!
//! Bits are packed most-significant-first into 64-bit words, so the derived
//! ordering on equal-length strings is the lexicographic order of their
//! `0`/`1` renderings. Indexing here is 0-based; the oracle layer converts
//! from the 1-based positions used by testers.

use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;

use crate::error::{Error, Result};

type Words = SmallVec<[u64; 4]>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    n: usize,
    words: Words,
}

#[inline]
fn word_count(n: usize) -> usize {
    n.div_ceil(64)
}

#[inline]
fn mask(i: usize) -> u64 {
    1u64 << (63 - (i & 63))
}

impl BitString {
    pub fn zeros(n: usize) -> Self {
        let mut words = Words::new();
        words.resize(word_count(n), 0);
        BitString { n, words }
    }

    pub fn ones(n: usize) -> Self {
        let mut s = Self::zeros(n);
        for i in 0..n {
            s.set(i, true);
        }
        s
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut s = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            s.set(i, b);
        }
        s
    }

    /// The low `n` bits of `value`, most significant first.
    pub fn from_u64(value: u64, n: usize) -> Self {
        assert!(n <= 64, "from_u64 supports at most 64 bits");
        let mut s = Self::zeros(n);
        for i in 0..n {
            s.set(i, (value >> (n - 1 - i)) & 1 == 1);
        }
        s
    }

    /// Inverse of [`BitString::from_u64`]; requires `len() <= 64`.
    pub fn to_u64(&self) -> u64 {
        assert!(self.n <= 64, "to_u64 supports at most 64 bits");
        if self.n == 0 {
            0
        } else {
            self.words[0] >> (64 - self.n)
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.n);
        self.words[i >> 6] & mask(i) != 0
    }

    #[inline]
    pub fn set(&mut self, i: usize, b: bool) {
        debug_assert!(i < self.n);
        if b {
            self.words[i >> 6] |= mask(i);
        } else {
            self.words[i >> 6] &= !mask(i);
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i >> 6] ^= mask(i);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn hamming(&self, other: &BitString) -> Result<usize> {
        if self.n != other.n {
            return Err(Error::LengthMismatch { left: self.n, right: other.n });
        }
        Ok(self.hamming_unchecked(other))
    }

    #[inline]
    pub(crate) fn hamming_unchecked(&self, other: &BitString) -> usize {
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    pub fn xor(&self, other: &BitString) -> Result<BitString> {
        if self.n != other.n {
            return Err(Error::LengthMismatch { left: self.n, right: other.n });
        }
        let words = self.words.iter().zip(other.words.iter()).map(|(a, b)| a ^ b).collect();
        Ok(BitString { n: self.n, words })
    }

    /// Cyclic shift with `out[i] = self[(i + j) mod n]`.
    pub fn rotate(&self, j: usize) -> BitString {
        let n = self.n;
        if n == 0 {
            return self.clone();
        }
        let j = j % n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            if self.get((i + j) % n) {
                out.set(i, true);
            }
        }
        out
    }

    /// Restriction to 0-based `positions`, in the given order.
    pub fn restrict(&self, positions: &[usize]) -> BitString {
        let mut out = Self::zeros(positions.len());
        for (k, &p) in positions.iter().enumerate() {
            if self.get(p) {
                out.set(k, true);
            }
        }
        out
    }

    /// Appends `extra` zero bits.
    pub fn pad_zeros(&self, extra: usize) -> BitString {
        let mut out = Self::zeros(self.n + extra);
        out.words[..self.words.len()].copy_from_slice(&self.words);
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.n).map(move |i| self.get(i))
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.iter().map(|b| if b { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = Self::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => out.set(i, true),
                other => return Err(Error::Parse(format!("unexpected character {other:?} in bit string"))),
            }
        }
        Ok(out)
    }
}

impl serde::Serialize for BitString {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for BitString {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
