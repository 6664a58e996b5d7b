use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::PottsParams;
use crate::error::{Error, Result};
use crate::graph::{Multigraph, Vertex};
use crate::limits::Limits;
use crate::poly::ExactScalar;

/// A spin configuration `σ ∈ {1, …, q}^V`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpinConfig {
    spins: Vec<u32>,
}

impl SpinConfig {
    pub fn spins(&self) -> &[u32] {
        &self.spins
    }

    /// `δ_e(σ)` for an edge with endpoints `(a, b)`.
    pub fn agrees(&self, a: Vertex, b: Vertex) -> bool {
        self.spins[a] == self.spins[b]
    }
}

/// All `q^n` spin configurations, first vertex fastest.
pub fn spin_configs(n: usize, q: u32) -> impl Iterator<Item = SpinConfig> {
    let mut cur = Some(vec![1u32; n]);
    core::iter::from_fn(move || {
        let out = cur.clone()?;
        let next = cur.as_mut()?;
        let mut i = 0;
        loop {
            if i == next.len() {
                cur = None;
                break;
            }
            if next[i] < q {
                next[i] += 1;
                break;
            }
            next[i] = 1;
            i += 1;
        }
        Some(SpinConfig { spins: out })
    })
}

fn prepare(g: &Multigraph, params: &PottsParams, limits: &Limits) -> Result<Vec<f64>> {
    g.require_loopless()?;
    params.check_edges(g.edge_count())?;
    limits.check_spins(params.q(), g.vertex_count())?;
    Ok(params.intensities())
}

fn log_weight(g: &Multigraph, lambda: &[f64], q: f64, s: &SpinConfig) -> f64 {
    g.edges()
        .iter()
        .zip(lambda)
        .map(|(&(a, b), l)| l * (q * s.agrees(a, b) as u8 as f64 - 1.0))
        .sum()
}

/// `Z^P = Σ_σ exp{Σ_e β J_e (q δ_e(σ) − 1)}`.
pub fn potts_partition(g: &Multigraph, params: &PottsParams, limits: &Limits) -> Result<f64> {
    let lambda = prepare(g, params, limits)?;
    let q = params.q() as f64;
    Ok(spin_configs(g.vertex_count(), params.q())
        .map(|s| crate::math::exp(log_weight(g, &lambda, q, &s)))
        .sum())
}

/// `σ(x, y)` for every pair at once from a single enumeration.
/// Entry `[x][y]` is `π(q δ_{σx,σy} − 1)`; the diagonal is `q − 1`.
pub fn potts_sigma_matrix(g: &Multigraph, params: &PottsParams, limits: &Limits) -> Result<Vec<Vec<f64>>> {
    let lambda = prepare(g, params, limits)?;
    let n = g.vertex_count();
    let q = params.q() as f64;
    // Shift exponents by their maximum, Σλ(q − 1), to keep weights ≤ 1.
    let shift: f64 = lambda.iter().sum::<f64>() * (q - 1.0);
    let mut z = 0.0;
    let mut acc = vec![vec![0.0; n]; n];
    for s in spin_configs(n, params.q()) {
        let w = crate::math::exp(log_weight(g, &lambda, q, &s) - shift);
        z += w;
        for x in 0..n {
            for y in 0..n {
                acc[x][y] += w * (q * s.agrees(x, y) as u8 as f64 - 1.0);
            }
        }
    }
    for row in &mut acc {
        for v in row.iter_mut() {
            *v /= z;
        }
    }
    Ok(acc)
}

/// `σ(x, y) = q τ(x, y) = π(q δ_{σx,σy} − 1)`.
pub fn potts_sigma(g: &Multigraph, params: &PottsParams, x: Vertex, y: Vertex, limits: &Limits) -> Result<f64> {
    g.check_distinct_pair(x, y)?;
    Ok(potts_sigma_matrix(g, params, limits)?[x][y])
}

fn exact_weights(g: &Multigraph, q: u32, p: &[ExactScalar], limits: &Limits) -> Result<Vec<ExactScalar>> {
    g.require_loopless()?;
    if p.len() != g.edge_count() {
        return Err(Error::LengthMismatch { expected: g.edge_count(), found: p.len() });
    }
    if q < 2 {
        return Err(Error::invalid("q must be at least 2"));
    }
    limits.check_spins(q, g.vertex_count())?;
    p.iter()
        .map(|pe| {
            if pe.is_one() || *pe > ExactScalar::one() || *pe < ExactScalar::zero() {
                Err(Error::invalid("exact Potts weights need 0 ≤ p_e < 1"))
            } else {
                Ok((ExactScalar::one() - pe).recip())
            }
        })
        .collect()
}

/// Sums `f(agree-mask, σ)` weights through a table of how many spin
/// configurations realize each agreement pattern on the edges.
fn pattern_sum<F: Fn(&SpinConfig) -> i64>(
    g: &Multigraph,
    q: u32,
    agree_weight: &[ExactScalar],
    observable: F,
) -> ExactScalar {
    use alloc::collections::BTreeMap;
    // pattern -> Σ observable over configurations with that pattern
    let mut table: BTreeMap<u64, i64> = BTreeMap::new();
    for s in spin_configs(g.vertex_count(), q) {
        let mask = g
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| s.agrees(a, b))
            .fold(0u64, |m, (i, _)| m | 1 << i);
        *table.entry(mask).or_default() += observable(&s);
    }
    table
        .into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|(mask, c)| {
            let w = (0..g.edge_count())
                .filter(|i| mask >> i & 1 == 1)
                .fold(ExactScalar::one(), |w, i| w * &agree_weight[i]);
            w * ExactScalar::from_integer(c.into())
        })
        .fold(ExactScalar::zero(), |a, b| a + b)
}

/// `e^{Σ λ_e} Z^P = Σ_σ Π_{e: δ_e = 1} (1 − p_e)^{−1}` in exact arithmetic,
/// where `p_e = 1 − e^{−λ_e q}` is given as a rational.
pub fn potts_partition_exact(g: &Multigraph, q: u32, p: &[ExactScalar], limits: &Limits) -> Result<ExactScalar> {
    let w = exact_weights(g, q, p, limits)?;
    Ok(pattern_sum(g, q, &w, |_| 1))
}

/// `σ(x, y)` in exact arithmetic, parameterized like [`potts_partition_exact`].
pub fn potts_sigma_exact(
    g: &Multigraph,
    q: u32,
    p: &[ExactScalar],
    x: Vertex,
    y: Vertex,
    limits: &Limits,
) -> Result<ExactScalar> {
    g.check_distinct_pair(x, y)?;
    let w = exact_weights(g, q, p, limits)?;
    let z = pattern_sum(g, q, &w, |_| 1);
    let q = q as i64;
    let num = pattern_sum(g, q as u32, &w, |s| if s.agrees(x, y) { q - 1 } else { -1 });
    Ok(num / z)
}
