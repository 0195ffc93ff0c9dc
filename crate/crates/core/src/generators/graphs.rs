//! Graphs as row-major `v x v` adjacency strings.

use rand::seq::SliceRandom;
use rand::RngCore;

use crate::bits::BitString;
use crate::distribution::FiniteDistribution;
use crate::error::{param, Result};

/// Largest vertex count for exhaustive permutation work.
pub const GRAPH_GUARD: usize = 7;

pub fn vertices(len: usize) -> Result<usize> {
    let v = (len as f64).sqrt().round() as usize;
    if v * v != len {
        return param(format!("length {len} is not a perfect square"));
    }
    Ok(v)
}

pub fn from_edges(v: usize, edges: &[(usize, usize)]) -> BitString {
    let mut g = BitString::zeros(v * v);
    for &(a, b) in edges {
        g.set(a * v + b, true);
        g.set(b * v + a, true);
    }
    g
}

pub fn path(v: usize) -> BitString {
    from_edges(v, &(1..v).map(|i| (i - 1, i)).collect::<Vec<_>>())
}

pub fn cycle(v: usize) -> BitString {
    let mut e: Vec<_> = (1..v).map(|i| (i - 1, i)).collect();
    e.push((v - 1, 0));
    from_edges(v, &e)
}

pub fn complete(v: usize) -> BitString {
    let e: Vec<_> = (0..v).flat_map(|a| (a + 1..v).map(move |b| (a, b))).collect();
    from_edges(v, &e)
}

/// Relabels vertex `a` as `perm[a]`.
pub fn relabel(g: &BitString, v: usize, perm: &[usize]) -> BitString {
    let mut out = BitString::zeros(v * v);
    for a in 0..v {
        for b in 0..v {
            if g.get(a * v + b) {
                out.set(perm[a] * v + perm[b], true);
            }
        }
    }
    out
}

/// All permutations of `0..v` in lexicographic order.
pub fn permutations(v: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; v], &mut out);
    out
}

/// Lexicographically smallest relabeling; equal iff the graphs are isomorphic.
pub fn canonical_form(g: &BitString, v: usize) -> BitString {
    permutations(v).iter().map(|p| relabel(g, v, p)).min().expect("at least one permutation")
}

/// `min_pi d(g, pi(h))`, relative to `v^2`.
pub fn iso_distance(g: &BitString, h: &BitString, v: usize) -> Result<f64> {
    let mut best = usize::MAX;
    for p in permutations(v) {
        best = best.min(g.hamming(&relabel(h, v, &p))?);
    }
    Ok(best as f64 / (v * v) as f64)
}

#[derive(Clone, Debug)]
pub enum PermLaw {
    Uniform,
    Explicit(Vec<(Vec<usize>, f64)>),
}

/// Law of `relabel(adjacency, pi)` for `pi` drawn from `law`.
pub fn iso_copies_dist(adjacency: &BitString, law: &PermLaw) -> Result<FiniteDistribution> {
    let v = vertices(adjacency.len())?;
    if v > GRAPH_GUARD {
        return param(format!("{v} vertices exceed the enumeration guard {GRAPH_GUARD}"));
    }
    let weighted: Vec<(Vec<usize>, f64)> = match law {
        PermLaw::Uniform => {
            let all = permutations(v);
            let w = 1.0 / all.len() as f64;
            all.into_iter().map(|p| (p, w)).collect()
        }
        PermLaw::Explicit(list) => {
            for (p, _) in list {
                let mut sorted = p.clone();
                sorted.sort_unstable();
                if sorted != (0..v).collect::<Vec<_>>() {
                    return param(format!("{p:?} is not a permutation of 0..{v}"));
                }
            }
            list.clone()
        }
    };
    FiniteDistribution::from_masses(v * v, weighted.into_iter().map(|(p, w)| (relabel(adjacency, v, &p), w)))
}

pub fn random_permutation(v: usize, rng: &mut dyn RngCore) -> Vec<usize> {
    let mut p: Vec<usize> = (0..v).collect();
    p.shuffle(rng);
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn copies_examples() {
        let empty = BitString::zeros(16);
        assert_eq!(iso_copies_dist(&empty, &PermLaw::Uniform).unwrap().support_size(), 1);
        assert_eq!(iso_copies_dist(&complete(4), &PermLaw::Uniform).unwrap().support_size(), 1);
        let one_edge = from_edges(3, &[(0, 1)]);
        let d = iso_copies_dist(&one_edge, &PermLaw::Uniform).unwrap();
        assert_eq!(d.support_size(), 3);
        assert!(d.atoms().iter().all(|(_, w)| (w - 1.0 / 3.0).abs() < 1e-12));
        assert!(iso_copies_dist(&BitString::zeros(10), &PermLaw::Uniform).is_err());
    }

    #[test]
    fn canonical_forms() {
        let p = path(5);
        let q = relabel(&p, 5, &[3, 1, 4, 0, 2]);
        assert_ne!(p, q);
        assert_eq!(canonical_form(&p, 5), canonical_form(&q, 5));
        assert_ne!(canonical_form(&p, 5), canonical_form(&cycle(5), 5));
        assert_eq!(iso_distance(&p, &cycle(5), 5).unwrap(), 2.0 / 25.0);
        assert_eq!(iso_distance(&p, &q, 5).unwrap(), 0.0);
    }
}
