use alloc::vec;
use alloc::vec::Vec;

use num_traits::Num;

use crate::dsu::Dsu;
use crate::error::{Error, Result};
use crate::graph::{Multigraph, Vertex};
use crate::limits::Limits;

/// A bond configuration `ω ∈ {0, 1}^E`, stored as a bit mask in edge order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RCConfig {
    mask: u64,
    edges: usize,
}

impl RCConfig {
    pub fn new(mask: u64, edges: usize) -> Result<Self> {
        if edges > 63 || (edges < 64 && mask >> edges != 0) {
            return Err(Error::invalid("bond mask does not fit the edge count"));
        }
        Ok(RCConfig { mask, edges })
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    /// `ω(e)`.
    pub fn is_open(&self, e: usize) -> bool {
        e < self.edges && self.mask >> e & 1 == 1
    }

    pub fn open_count(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// Whether `x ↔ y` through open edges of `g`.
    pub fn connects(&self, g: &Multigraph, x: Vertex, y: Vertex) -> bool {
        g.connected_by_mask(self.mask, x, y)
    }

    /// `k(ω)`, counting isolated vertices.
    pub fn components(&self, g: &Multigraph) -> usize {
        g.component_count_mask(self.mask)
    }
}

fn check_probs<T>(g: &Multigraph, p: &[T], limits: &Limits) -> Result<()> {
    if p.len() != g.edge_count() {
        return Err(Error::LengthMismatch { expected: g.edge_count(), found: p.len() });
    }
    limits.check_rc(g.edge_count())
}

/// Visits every configuration with its unnormalized weight
/// `Π p_e^{ω(e)} (1 − p_e)^{1 − ω(e)} · base^{k(ω)}`.
fn for_each_weighted<T, F>(g: &Multigraph, p: &[T], base: &T, limits: &Limits, mut visit: F) -> Result<()>
where
    T: Clone + Num,
    F: FnMut(RCConfig, &mut Dsu, T),
{
    check_probs(g, p, limits)?;
    let e = g.edge_count();
    let closed: Vec<T> = p.iter().map(|pe| T::one() - pe.clone()).collect();
    let mut powers = vec![T::one()];
    for _ in 0..g.vertex_count() {
        let next = powers.last().cloned().unwrap_or_else(T::one) * base.clone();
        powers.push(next);
    }
    for mask in 0..1u64 << e {
        let mut dsu = Dsu::new(g.vertex_count());
        let mut w = T::one();
        for (i, &(a, b)) in g.edges().iter().enumerate() {
            if mask >> i & 1 == 1 {
                dsu.union(a, b);
                w = w * p[i].clone();
            } else {
                w = w * closed[i].clone();
            }
        }
        let w = w * powers[dsu.sets()].clone();
        visit(RCConfig { mask, edges: e }, &mut dsu, w);
    }
    Ok(())
}

/// `Z^RC = Σ_ω Π p_e^{ω(e)} (1 − p_e)^{1 − ω(e)} q^{k(ω)}`. The parameter
/// `q` may be any positive number; loops are allowed.
pub fn rc_partition<T: Clone + Num>(g: &Multigraph, p: &[T], q: &T, limits: &Limits) -> Result<T> {
    let mut z = T::zero();
    for_each_weighted(g, p, q, limits, |_, _, w| z = z.clone() + w)?;
    Ok(z)
}

/// `φ_{p,q}(event)`.
pub fn rc_prob<T, F>(g: &Multigraph, p: &[T], q: &T, mut event: F, limits: &Limits) -> Result<T>
where
    T: Clone + Num,
    F: FnMut(&RCConfig) -> bool,
{
    let (mut z, mut hit) = (T::zero(), T::zero());
    for_each_weighted(g, p, q, limits, |c, _, w| {
        if event(&c) {
            hit = hit.clone() + w.clone();
        }
        z = z.clone() + w;
    })?;
    Ok(hit / z)
}

/// `φ_{p,q}(x ↔ y)`.
pub fn rc_connection<T: Clone + Num>(
    g: &Multigraph,
    p: &[T],
    q: &T,
    x: Vertex,
    y: Vertex,
    limits: &Limits,
) -> Result<T> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    rc_prob(g, p, q, |c| c.connects(g, x, y), limits)
}

/// `φ_{p,q}(x ↔ y)` for all pairs from one enumeration; the diagonal is 1.
pub fn rc_connection_matrix<T: Clone + Num>(g: &Multigraph, p: &[T], q: &T, limits: &Limits) -> Result<Vec<Vec<T>>> {
    let n = g.vertex_count();
    let mut z = T::zero();
    let mut acc = vec![vec![T::zero(); n]; n];
    for_each_weighted(g, p, q, limits, |_, dsu, w| {
        let roots: Vec<usize> = (0..n).map(|v| dsu.find(v)).collect();
        for x in 0..n {
            for y in 0..n {
                if roots[x] == roots[y] {
                    acc[x][y] = acc[x][y].clone() + w.clone();
                }
            }
        }
        z = z.clone() + w;
    })?;
    Ok(acc.into_iter().map(|row| row.into_iter().map(|v| v / z.clone()).collect()).collect())
}

/// `φ_p(base^k) = Σ_ω Π p_e^{ω(e)} (1 − p_e)^{1 − ω(e)} base^{k(ω)}`, the
/// moment of `base^{k(ω)}` under the product measure.
pub fn rc_q_moment<T: Clone + Num>(g: &Multigraph, p: &[T], base: &T, limits: &Limits) -> Result<T> {
    rc_partition(g, p, base, limits)
}
