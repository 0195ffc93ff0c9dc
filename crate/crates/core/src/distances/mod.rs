//! Exact ground-truth distances between explicit distributions.

mod grain;
mod support;
mod transport;

use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::distribution::FiniteDistribution;
use crate::error::{Error, Result};

pub use grain::{grain_bound, grain_round, is_grained, max_offset};
pub use support::{dist_to_support_m, SUPPORT_GUARD};
pub use transport::{emd, TransportPlan};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroundMetric {
    RelativeHamming,
    Inequality,
}

impl GroundMetric {
    pub fn eval(self, x: &BitString, y: &BitString) -> Result<f64> {
        match self {
            GroundMetric::RelativeHamming => hamming_rel(x, y),
            GroundMetric::Inequality => {
                if x.len() != y.len() {
                    return Err(Error::LengthMismatch { left: x.len(), right: y.len() });
                }
                Ok(if x == y { 0.0 } else { 1.0 })
            }
        }
    }
}

pub fn hamming_rel(x: &BitString, y: &BitString) -> Result<f64> {
    Ok(x.hamming(y)? as f64 / x.len() as f64)
}

/// Half the l1 distance between the weight functions.
pub fn tv(p: &FiniteDistribution, q: &FiniteDistribution) -> Result<f64> {
    if p.n() != q.n() {
        return Err(Error::LengthMismatch { left: p.n(), right: q.n() });
    }
    let (a, b) = (p.atoms(), q.atoms());
    let (mut i, mut j) = (0, 0);
    let mut l1 = 0.0;
    while i < a.len() || j < b.len() {
        let ord = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => x.0.cmp(&y.0),
            (Some(_), None) => std::cmp::Ordering::Less,
            _ => std::cmp::Ordering::Greater,
        };
        match ord {
            std::cmp::Ordering::Less => {
                l1 += a[i].1;
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                l1 += b[j].1;
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                l1 += (a[i].1 - b[j].1).abs();
                i += 1;
                j += 1;
            }
        }
    }
    Ok((l1 / 2.0).min(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn hamming_examples() {
        assert_eq!(hamming_rel(&bs("0101"), &bs("0101")).unwrap(), 0.0);
        assert_eq!(hamming_rel(&bs("0000"), &bs("1111")).unwrap(), 1.0);
        assert_eq!(hamming_rel(&bs("0101"), &bs("0111")).unwrap(), 0.25);
        assert!(hamming_rel(&bs("01"), &bs("011")).is_err());
    }

    #[test]
    fn inequality_metric() {
        let g = GroundMetric::Inequality;
        assert_eq!(g.eval(&bs("01"), &bs("01")).unwrap(), 0.0);
        assert_eq!(g.eval(&bs("01"), &bs("00")).unwrap(), 1.0);
    }

    #[test]
    fn tv_examples() {
        let p = FiniteDistribution::uniform(vec![bs("00"), bs("11")]).unwrap();
        let q = FiniteDistribution::point_mass(bs("00"));
        let r = FiniteDistribution::point_mass(bs("01"));
        assert_eq!(tv(&p, &p).unwrap(), 0.0);
        assert_eq!(tv(&q, &r).unwrap(), 1.0);
        assert!((tv(&p, &q).unwrap() - 0.5).abs() < 1e-15);
        assert!(tv(&p, &FiniteDistribution::point_mass(bs("0"))).is_err());
    }
}
