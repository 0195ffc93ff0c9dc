use serde::{Deserialize, Serialize};

use super::GroundMetric;
use crate::distribution::FiniteDistribution;
use crate::error::{Error, Result};

const TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransportPlan {
    /// `(source atom, target atom, mass)` with positive mass.
    pub entries: Vec<(usize, usize, f64)>,
    pub cost: f64,
}

impl TransportPlan {
    pub fn row_sums(&self, rows: usize) -> Vec<f64> {
        let mut out = vec![0.0; rows];
        for &(i, _, w) in &self.entries {
            out[i] += w;
        }
        out
    }

    pub fn col_sums(&self, cols: usize) -> Vec<f64> {
        let mut out = vec![0.0; cols];
        for &(_, j, w) in &self.entries {
            out[j] += w;
        }
        out
    }
}

/// Earth mover's distance as the optimum of the transportation problem
/// between the two supports, solved by successive shortest paths.
pub fn emd(p: &FiniteDistribution, q: &FiniteDistribution, g: GroundMetric) -> Result<(f64, TransportPlan)> {
    if p.n() != q.n() {
        return Err(Error::LengthMismatch { left: p.n(), right: q.n() });
    }
    let (pa, qa) = (p.atoms(), q.atoms());
    let (a, b) = (pa.len(), qa.len());
    let mut cost = vec![0.0; a * b];
    for (i, (x, _)) in pa.iter().enumerate() {
        for (j, (y, _)) in qa.iter().enumerate() {
            cost[i * b + j] = g.eval(x, y)?;
        }
    }
    let supply: Vec<f64> = pa.iter().map(|t| t.1).collect();
    let demand: Vec<f64> = qa.iter().map(|t| t.1).collect();
    let flow = solve(&supply, &demand, &cost);
    let mut entries = Vec::new();
    let mut total = 0.0;
    for i in 0..a {
        for j in 0..b {
            let f = flow[i * b + j];
            if f > 0.0 {
                entries.push((i, j, f));
                total += f * cost[i * b + j];
            }
        }
    }
    let value = total.clamp(0.0, 1.0);
    Ok((value, TransportPlan { entries, cost: total }))
}

/// Min-cost transportation with dense costs `cost[i * b + j]`.
///
/// Nodes: supplies `0..a`, demands `a..a+b`, source `a+b`. Each round finds
/// a cheapest path from an unsaturated supply to an unsaturated demand with
/// Bellman-Ford and pushes the bottleneck amount.
fn solve(supply: &[f64], demand: &[f64], cost: &[f64]) -> Vec<f64> {
    let (a, b) = (supply.len(), demand.len());
    let nodes = a + b + 1;
    let s = a + b;
    let mut flow = vec![0.0; a * b];
    let mut sent = vec![0.0; a];
    let mut recv = vec![0.0; b];
    let max_rounds = 4 * (a + 1) * (b + 1) * (a + b + 2);
    for _ in 0..max_rounds {
        let mut dist = vec![f64::INFINITY; nodes];
        let mut pred = vec![usize::MAX; nodes];
        dist[s] = 0.0;
        for i in 0..a {
            if supply[i] - sent[i] > TOL {
                dist[i] = 0.0;
                pred[i] = s;
            }
        }
        for _ in 0..nodes {
            let mut changed = false;
            for i in 0..a {
                if dist[i].is_finite() {
                    for j in 0..b {
                        let d = dist[i] + cost[i * b + j];
                        if d < dist[a + j] - TOL {
                            dist[a + j] = d;
                            pred[a + j] = i;
                            changed = true;
                        }
                    }
                }
            }
            for j in 0..b {
                if dist[a + j].is_finite() {
                    for i in 0..a {
                        if flow[i * b + j] > TOL {
                            let d = dist[a + j] - cost[i * b + j];
                            if d < dist[i] - TOL {
                                dist[i] = d;
                                pred[i] = a + j;
                                changed = true;
                            }
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut best = None;
        for j in 0..b {
            if dist[a + j].is_finite() && demand[j] - recv[j] > TOL {
                match best {
                    Some(k) if dist[a + k] <= dist[a + j] => {}
                    _ => best = Some(j),
                }
            }
        }
        let Some(end) = best else { break };
        // Walk back to find the bottleneck.
        let mut amount = demand[end] - recv[end];
        let mut v = a + end;
        loop {
            let u = pred[v];
            if u == s {
                amount = amount.min(supply[v] - sent[v]);
                break;
            }
            if v < a {
                amount = amount.min(flow[v * b + (u - a)]);
            }
            v = u;
        }
        if amount <= TOL {
            break;
        }
        recv[end] += amount;
        let mut v = a + end;
        loop {
            let u = pred[v];
            if u == s {
                sent[v] += amount;
                break;
            }
            if v >= a {
                flow[u * b + (v - a)] += amount;
            } else {
                let idx = v * b + (u - a);
                flow[idx] = (flow[idx] - amount).max(0.0);
            }
            v = u;
        }
    }
    flow
}
