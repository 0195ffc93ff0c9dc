use crate::bits::BitString;
use crate::distribution::FiniteDistribution;
use crate::error::{param, Result};

fn floor_log2(n: usize) -> usize {
    (usize::BITS - 1 - n.leading_zeros()) as usize
}

/// Largest offset accepted by [`grain_round`]: `floor(log2 l) + 2` with `l = floor(log2 n)`.
pub fn max_offset(n: usize) -> usize {
    let l = floor_log2(n);
    (floor_log2(l) + 2).min(l)
}

/// Distance guarantee of [`grain_round`]: `l/n + 2^-(l - offset)`.
pub fn grain_bound(n: usize, offset: usize) -> f64 {
    let l = floor_log2(n);
    l as f64 / n as f64 + (2.0f64).powi(-((l - offset) as i32))
}

/// Rounds `p` to a `2^(n - offset)`-grained distribution.
///
/// The last `floor(log2 n)` bits of every atom are zeroed, every weight is
/// floored to a multiple of `2^-(n - offset)`, and the leftover mass is put
/// on the all-ones string.
pub fn grain_round(p: &FiniteDistribution, offset: usize) -> Result<FiniteDistribution> {
    let n = p.n();
    if n < 4 {
        return param(format!("grain rounding needs n >= 4, got {n}"));
    }
    if offset > max_offset(n) {
        return param(format!("offset {offset} exceeds {} for n = {n}", max_offset(n)));
    }
    let exp = n - offset;
    if exp > 52 {
        return param(format!("granularity 2^-{exp} is below f64 resolution"));
    }
    let l = floor_log2(n);
    let zeroed = p.map(|x| {
        let mut y = x.clone();
        for i in n - l..n {
            y.set(i, false);
        }
        y
    })?;
    let scale = (1u64 << exp) as f64;
    let mut units_total: u64 = 0;
    let mut atoms = Vec::with_capacity(zeroed.support_size() + 1);
    for (x, w) in zeroed.atoms() {
        let units = (w * scale).floor() as u64;
        if units > 0 {
            units_total += units;
            atoms.push((x.clone(), units));
        }
    }
    let residual = (1u64 << exp).saturating_sub(units_total);
    if residual > 0 {
        atoms.push((BitString::ones(n), residual));
    }
    FiniteDistribution::new(n, atoms.into_iter().map(|(x, u)| (x, u as f64 / scale)).collect())
}

/// True when every weight is an exact multiple of `2^-exp`.
pub fn is_grained(p: &FiniteDistribution, exp: u32) -> bool {
    let scale = (2.0f64).powi(exp as i32);
    p.atoms().iter().all(|(_, w)| {
        let u = w * scale;
        u == u.floor()
    })
}
