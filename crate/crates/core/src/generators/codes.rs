use rand::{Rng, RngCore};

use crate::bits::BitString;
use crate::distribution::FiniteDistribution;
use crate::error::{param, Error, Result};

pub const CODE_GUARD: usize = 12;

/// Binary linear code given by `k` generator rows of length `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearCode {
    pub k: usize,
    pub n: usize,
    pub rows: Vec<BitString>,
    /// Minimum relative distance, measured exhaustively.
    pub min_distance: f64,
}

impl LinearCode {
    /// Checks injectivity and measures the distance over all `2^k` codewords.
    pub fn from_rows(rows: Vec<BitString>) -> Result<Self> {
        let k = rows.len();
        if k == 0 || k > CODE_GUARD {
            return param(format!("code dimension {k} outside 1..={CODE_GUARD}"));
        }
        let n = rows[0].len();
        if rows.iter().any(|r| r.len() != n) {
            return param("generator rows differ in length");
        }
        let mut code = LinearCode { k, n, rows, min_distance: 0.0 };
        // Linear code: minimum distance equals minimum nonzero weight.
        let min_weight = (1..1u64 << k).map(|msg| code.encode(msg).weight()).min().unwrap_or(0);
        if min_weight == 0 {
            return Err(Error::Unsatisfiable("encoder is not injective".into()));
        }
        code.min_distance = min_weight as f64 / n as f64;
        Ok(code)
    }

    /// Codeword of message `msg`, read as k bits with row 0 the most significant.
    pub fn encode(&self, msg: u64) -> BitString {
        let mut out = BitString::zeros(self.n);
        for (j, row) in self.rows.iter().enumerate() {
            if msg >> (self.k - 1 - j) & 1 == 1 {
                out = out.xor(row).expect("rows share a length");
            }
        }
        out
    }

    pub fn codewords(&self) -> Vec<BitString> {
        (0..1u64 << self.k).map(|m| self.encode(m)).collect()
    }
}

/// Hadamard code: message `a` maps to the truth table of `x -> <a, x> mod 2`
/// over `x = 0..2^k` in increasing order.
pub fn hadamard_code(k: usize) -> Result<LinearCode> {
    if k == 0 || k > CODE_GUARD {
        return param(format!("hadamard dimension {k} outside 1..={CODE_GUARD}"));
    }
    let n = 1usize << k;
    let rows = (0..k)
        .map(|j| {
            let bit = k - 1 - j;
            let mut r = BitString::zeros(n);
            for x in 0..n {
                if x >> bit & 1 == 1 {
                    r.set(x, true);
                }
            }
            r
        })
        .collect();
    LinearCode::from_rows(rows)
}

/// Random generator matrix, redrawn until the measured distance is at least 1/4.
pub fn random_linear_code(k: usize, n: usize, rng: &mut dyn RngCore) -> Result<LinearCode> {
    const ATTEMPTS: usize = 1000;
    if n == 0 {
        return param("block length must be positive");
    }
    for _ in 0..ATTEMPTS {
        let rows = (0..k)
            .map(|_| BitString::from_bools(&(0..n).map(|_| rng.random::<bool>()).collect::<Vec<_>>()))
            .collect();
        match LinearCode::from_rows(rows) {
            Ok(c) if c.min_distance >= 0.25 => return Ok(c),
            Ok(_) | Err(Error::Unsatisfiable(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Unsatisfiable(format!("no [{n},{k}] code with distance >= 1/4 in {ATTEMPTS} draws")))
}

/// Pushforward of a distribution over k-bit messages through the encoder.
pub fn code_lift(code: &LinearCode, z: &FiniteDistribution) -> Result<FiniteDistribution> {
    if z.n() != code.k {
        return param(format!("messages have {} bits, code expects {}", z.n(), code.k));
    }
    z.map(|msg| code.encode(msg.to_u64()))
}
