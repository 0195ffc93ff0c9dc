use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::error::{Error, Result};

pub const WEIGHT_TOLERANCE: f64 = 1e-12;
pub const FILE_WEIGHT_TOLERANCE: f64 = 1e-9;

/// Anything an oracle can draw n-bit samples from.
pub trait Source: Send + Sync + fmt::Debug {
    fn n(&self) -> usize;
    fn draw(&self, rng: &mut dyn RngCore) -> BitString;
}

/// Explicit distribution over `{0,1}^n`. Atoms are kept sorted by string.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDistribution", into = "RawDistribution")]
pub struct FiniteDistribution {
    n: usize,
    atoms: Vec<(BitString, f64)>,
    cumulative: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct RawDistribution {
    n: usize,
    atoms: Vec<(BitString, f64)>,
}

impl TryFrom<RawDistribution> for FiniteDistribution {
    type Error = Error;
    fn try_from(raw: RawDistribution) -> Result<Self> {
        FiniteDistribution::new(raw.n, raw.atoms)
    }
}

impl From<FiniteDistribution> for RawDistribution {
    fn from(d: FiniteDistribution) -> Self {
        RawDistribution { n: d.n, atoms: d.atoms }
    }
}

impl FiniteDistribution {
    /// Validated constructor: distinct length-`n` strings, weights in (0,1]
    /// summing to 1 within [`WEIGHT_TOLERANCE`].
    pub fn new(n: usize, atoms: Vec<(BitString, f64)>) -> Result<Self> {
        Self::validated(n, atoms, WEIGHT_TOLERANCE)
    }

    fn validated(n: usize, mut atoms: Vec<(BitString, f64)>, tol: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDistribution("n must be positive".into()));
        }
        if atoms.is_empty() {
            return Err(Error::InvalidDistribution("no atoms".into()));
        }
        for (x, w) in &atoms {
            if x.len() != n {
                return Err(Error::InvalidDistribution(format!("atom {x} has length {}, expected {n}", x.len())));
            }
            if !(*w > 0.0 && *w <= 1.0 + tol) {
                return Err(Error::InvalidDistribution(format!("atom {x} has weight {w} outside (0,1]")));
            }
        }
        atoms.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some(w) = atoms.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidDistribution(format!("duplicate atom {}", w[0].0)));
        }
        let total: f64 = atoms.iter().map(|a| a.1).sum();
        if (total - 1.0).abs() > tol {
            return Err(Error::InvalidDistribution(format!("weights sum to {total}")));
        }
        let mut acc = 0.0;
        let cumulative = atoms
            .iter()
            .map(|a| {
                acc += a.1;
                acc
            })
            .collect();
        Ok(FiniteDistribution { n, atoms, cumulative })
    }

    /// Merges duplicate strings, drops zero weights and rescales to total mass 1.
    pub fn from_masses(n: usize, masses: impl IntoIterator<Item = (BitString, f64)>) -> Result<Self> {
        let mut merged: BTreeMap<BitString, f64> = BTreeMap::new();
        for (x, w) in masses {
            if w < 0.0 || !w.is_finite() {
                return Err(Error::InvalidDistribution(format!("mass {w} on {x}")));
            }
            *merged.entry(x).or_insert(0.0) += w;
        }
        let total: f64 = merged.values().sum();
        if total <= 0.0 {
            return Err(Error::InvalidDistribution("zero total mass".into()));
        }
        let atoms = merged.into_iter().filter(|(_, w)| *w > 0.0).map(|(x, w)| (x, w / total)).collect();
        Self::new(n, atoms)
    }

    pub fn point_mass(x: BitString) -> Self {
        let n = x.len();
        Self::new(n, vec![(x, 1.0)]).expect("point mass is valid")
    }

    pub fn uniform(strings: Vec<BitString>) -> Result<Self> {
        let Some(first) = strings.first() else {
            return Err(Error::InvalidDistribution("no atoms".into()));
        };
        let n = first.len();
        let w = 1.0 / strings.len() as f64;
        Self::new(n, strings.into_iter().map(|x| (x, w)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn atoms(&self) -> &[(BitString, f64)] {
        &self.atoms
    }

    pub fn support_size(&self) -> usize {
        self.atoms.len()
    }

    pub fn weight_of(&self, x: &BitString) -> f64 {
        self.atoms.binary_search_by(|a| a.0.cmp(x)).map(|i| self.atoms[i].1).unwrap_or(0.0)
    }

    pub fn sample_index(&self, rng: &mut dyn RngCore) -> usize {
        let u: f64 = rng.random::<f64>() * self.cumulative[self.cumulative.len() - 1];
        self.cumulative.partition_point(|&c| c <= u).min(self.atoms.len() - 1)
    }

    /// Pushforward under `f`; the image strings may have any common length.
    pub fn map(&self, mut f: impl FnMut(&BitString) -> BitString) -> Result<Self> {
        let images: Vec<(BitString, f64)> = self.atoms.iter().map(|(x, w)| (f(x), *w)).collect();
        let n = images[0].0.len();
        Self::from_masses(n, images)
    }

    /// Distribution of `X_J` for 1-based positions `j`.
    pub fn restrict(&self, j: &[usize]) -> Result<Self> {
        if let Some(&bad) = j.iter().find(|&&p| p == 0 || p > self.n) {
            return Err(Error::PositionOutOfRange { pos: bad, n: self.n });
        }
        let zero_based: Vec<usize> = j.iter().map(|p| p - 1).collect();
        self.map(|x| x.restrict(&zero_based))
    }

    /// Renders the text file format: `n <int>` then `<bits> <weight>` per line.
    pub fn to_file_string(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for (x, w) in &self.atoms {
            out.push_str(&format!("{x} {w:e}\n"));
        }
        out
    }

    /// Parses the text file format, accepting weight sums within
    /// [`FILE_WEIGHT_TOLERANCE`] of 1 and renormalizing.
    pub fn parse_file(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty file".into()))?;
        let n = match header.split_whitespace().collect::<Vec<_>>()[..] {
            ["n", v] => v.parse::<usize>().map_err(|e| Error::Parse(format!("bad n: {e}")))?,
            _ => return Err(Error::Parse(format!("expected `n <int>`, got {header:?}"))),
        };
        let mut atoms = Vec::new();
        for line in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [bits, w] = parts[..] else {
                return Err(Error::Parse(format!("expected `<bits> <weight>`, got {line:?}")));
            };
            let x: BitString = bits.parse()?;
            let w: f64 = w.parse().map_err(|e| Error::Parse(format!("bad weight {w:?}: {e}")))?;
            atoms.push((x, w));
        }
        let total: f64 = atoms.iter().map(|a| a.1).sum();
        let checked = Self::validated(n, atoms.clone(), FILE_WEIGHT_TOLERANCE)?;
        if (total - 1.0).abs() <= WEIGHT_TOLERANCE {
            return Ok(checked);
        }
        Self::new(n, checked.atoms.into_iter().map(|(x, w)| (x, w / total)).collect())
    }
}

impl Source for FiniteDistribution {
    fn n(&self) -> usize {
        self.n
    }

    fn draw(&self, rng: &mut dyn RngCore) -> BitString {
        self.atoms[self.sample_index(rng)].0.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Seed;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(FiniteDistribution::new(2, vec![(bs("00"), 0.5), (bs("00"), 0.5)]).is_err());
        assert!(FiniteDistribution::new(2, vec![(bs("00"), 0.5), (bs("01"), 0.4)]).is_err());
        assert!(FiniteDistribution::new(2, vec![(bs("000"), 1.0)]).is_err());
        assert!(FiniteDistribution::new(2, vec![(bs("00"), 1.0), (bs("01"), 0.0)]).is_err());
        assert!(FiniteDistribution::new(2, vec![]).is_err());
    }

    #[test]
    fn atoms_are_sorted_and_weights_found() {
        let d = FiniteDistribution::new(2, vec![(bs("11"), 0.25), (bs("00"), 0.75)]).unwrap();
        assert_eq!(d.atoms()[0].0, bs("00"));
        assert_eq!(d.weight_of(&bs("11")), 0.25);
        assert_eq!(d.weight_of(&bs("01")), 0.0);
        assert_eq!(d.support_size(), 2);
    }

    #[test]
    fn sampling_frequencies() {
        let d = FiniteDistribution::new(2, vec![(bs("00"), 0.2), (bs("01"), 0.3), (bs("11"), 0.5)]).unwrap();
        let mut rng = Seed(3).rng();
        let mut counts = [0usize; 3];
        for _ in 0..30_000 {
            counts[d.sample_index(&mut rng)] += 1;
        }
        for (c, w) in counts.iter().zip([0.2, 0.3, 0.5]) {
            assert!((*c as f64 / 30_000.0 - w).abs() < 0.015);
        }
    }

    #[test]
    fn file_round_trip_and_tolerance() {
        let d = FiniteDistribution::new(3, vec![(bs("001"), 0.1), (bs("110"), 0.9)]).unwrap();
        let back = FiniteDistribution::parse_file(&d.to_file_string()).unwrap();
        assert_eq!(back.atoms(), d.atoms());
        let slightly_off = "n 2\n00 0.5000000001\n11 0.5\n";
        let loaded = FiniteDistribution::parse_file(slightly_off).unwrap();
        let total: f64 = loaded.atoms().iter().map(|a| a.1).sum();
        assert!((total - 1.0).abs() <= WEIGHT_TOLERANCE);
        assert!(FiniteDistribution::parse_file("n 2\n00 0.5\n11 0.4\n").is_err());
        assert!(FiniteDistribution::parse_file("m 2\n00 1\n").is_err());
    }

    #[test]
    fn restriction_merges_atoms() {
        let d = FiniteDistribution::uniform(vec![bs("0011"), bs("0110"), bs("1100")]).unwrap();
        let r = d.restrict(&[1, 4]).unwrap();
        assert_eq!(r.n(), 2);
        assert_eq!(r.support_size(), 3);
        let r = d.restrict(&[1]).unwrap();
        assert!((r.weight_of(&bs("1")) - 1.0 / 3.0).abs() < 1e-12);
        assert!((r.weight_of(&bs("0")) - 2.0 / 3.0).abs() < 1e-12);
        assert!(d.restrict(&[0]).is_err());
    }

    #[test]
    fn serde_validates() {
        let d = FiniteDistribution::uniform(vec![bs("01"), bs("10")]).unwrap();
        let json = serde_json::to_string(&d).unwrap();
        let back: FiniteDistribution = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d);
        assert!(serde_json::from_str::<FiniteDistribution>(r#"{"n":2,"atoms":[["01",0.3]]}"#).is_err());
    }
}
