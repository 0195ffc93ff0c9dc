use crate::bits::BitString;
use crate::distribution::FiniteDistribution;
use crate::error::{Error, Result};

/// Largest support handled by the exhaustive partition search.
pub const SUPPORT_GUARD: usize = 12;

fn majority_center(atoms: &[(BitString, f64)], members: u32) -> BitString {
    let n = atoms[0].0.len();
    let mut c = BitString::zeros(n);
    for pos in 0..n {
        let (mut w0, mut w1) = (0.0, 0.0);
        for (k, (x, w)) in atoms.iter().enumerate() {
            if members >> k & 1 == 1 {
                if x.get(pos) {
                    w1 += w;
                } else {
                    w0 += w;
                }
            }
        }
        if w1 > w0 {
            c.set(pos, true);
        }
    }
    c
}

/// EMD (relative Hamming) from `p` to the nearest distribution with support
/// at most `m`, with the optimal centers.
///
/// Every atom moves whole to one center, so the optimum is a partition of
/// the support into at most `m` clusters, each sent to its weighted
/// coordinate-wise majority (ties to 0).
pub fn dist_to_support_m(p: &FiniteDistribution, m: usize) -> Result<(f64, Vec<BitString>)> {
    let atoms = p.atoms();
    let k = atoms.len();
    if m == 0 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    if k <= m {
        return Ok((0.0, atoms.iter().map(|a| a.0.clone()).collect()));
    }
    if k > SUPPORT_GUARD {
        return Err(Error::SupportTooLarge { size: k, guard: SUPPORT_GUARD });
    }
    let n = p.n() as f64;
    let full = (1u32 << k) - 1;
    let mut cluster_cost = vec![0.0; 1 << k];
    let mut centers = vec![None; 1 << k];
    for mask in 1..=full {
        let c = majority_center(atoms, mask);
        let mut cost = 0.0;
        for (i, (x, w)) in atoms.iter().enumerate() {
            if mask >> i & 1 == 1 {
                cost += w * x.hamming_unchecked(&c) as f64 / n;
            }
        }
        cluster_cost[mask as usize] = cost;
        centers[mask as usize] = Some(c);
    }
    // best[j][mask]: cheapest split of `mask` into at most j clusters.
    let mut best = vec![vec![f64::INFINITY; 1 << k]; m + 1];
    let mut choice = vec![vec![0u32; 1 << k]; m + 1];
    best[0][0] = 0.0;
    for j in 1..=m {
        best[j][0] = 0.0;
        for mask in 1..=full {
            let low = mask & mask.wrapping_neg();
            let rest = mask ^ low;
            // enumerate clusters containing the lowest member
            let mut sub = rest;
            loop {
                let cluster = sub | low;
                let cand = cluster_cost[cluster as usize] + best[j - 1][(mask ^ cluster) as usize];
                if cand < best[j][mask as usize] {
                    best[j][mask as usize] = cand;
                    choice[j][mask as usize] = cluster;
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
        }
    }
    let mut out = Vec::new();
    let (mut j, mut mask) = (m, full);
    while mask != 0 {
        let cluster = choice[j][mask as usize];
        out.push(centers[cluster as usize].clone().expect("center computed"));
        mask ^= cluster;
        j -= 1;
    }
    Ok((best[m][full as usize].clamp(0.0, 1.0), out))
}
