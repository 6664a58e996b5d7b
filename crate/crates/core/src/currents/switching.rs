use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Multigraph, Multiplicities, Vertex, VertexSet};
use crate::limits::{check, Limits};
use crate::math::{exp, exp_series_tail};
use crate::poisson::IntensityVector;

/// Largest vertex count for the per-source-set count table.
const TABLE_VERTICES: usize = 20;

/// `lhs = #{n ⊆ M: ∂n = {x,y}, ∂(M∖n) = A}` and
/// `rhs = #{n ⊆ M: ∂n = ∅, ∂(M∖n) = A △ {x,y}}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SwitchingCounts {
    pub lhs: u64,
    pub rhs: u64,
}

/// Number of labelled sub-multisets `n ⊆ M` for each source set `∂n`,
/// filled by one Gray-code pass over all `2^{Σm}` subsets.
#[derive(Debug, Clone)]
pub struct SwitchingTable {
    full_parity: u64,
    counts: Vec<u64>,
}

fn mask_of(a: &VertexSet) -> u64 {
    a.to_mask().expect("vertex indices were checked")
}

impl SwitchingTable {
    pub fn new(g: &Multigraph, m: &Multiplicities, limits: &Limits) -> Result<Self> {
        m.check_len(g.edge_count())?;
        if g.vertex_count() > TABLE_VERTICES {
            return Err(Error::invalid("switching tables hold at most 20 vertices"));
        }
        let total = m.total();
        check("sub-multisets", 1u128 << total.min(127), limits.switching_subsets.min(1 << 63))?;
        let toggles: Vec<u64> = g
            .edges()
            .iter()
            .zip(m.as_slice())
            .flat_map(|(&(a, b), &k)| core::iter::repeat_n((1u64 << a) ^ (1u64 << b), k as usize))
            .collect();
        let mut counts = vec![0u64; 1 << g.vertex_count()];
        let mut parity = 0u64;
        counts[0] = 1;
        for i in 1..1u64 << total {
            parity ^= toggles[i.trailing_zeros() as usize];
            counts[parity as usize] += 1;
        }
        let full_parity = toggles.iter().fold(0, |acc, t| acc ^ t);
        Ok(SwitchingTable { full_parity, counts })
    }

    /// `#{n: ∂n = B}`.
    pub fn with_sources(&self, b: &VertexSet) -> u64 {
        self.counts.get(mask_of(b) as usize).copied().unwrap_or(0)
    }

    /// `∂M`.
    pub fn sources(&self) -> VertexSet {
        VertexSet::from_mask(self.full_parity)
    }

    /// Both counts, using `∂(M∖n) = ∂M △ ∂n`.
    pub fn counts(&self, x: Vertex, y: Vertex, a: &VertexSet) -> SwitchingCounts {
        let xy = 1u64 << x | 1u64 << y;
        let a = mask_of(a);
        let pick = |n: u64, rest: u64| if self.full_parity ^ n == rest { self.counts[n as usize] } else { 0 };
        SwitchingCounts { lhs: pick(xy, a), rhs: pick(0, a ^ xy) }
    }
}

/// Both sides of the switching lemma for a fixed labelling, counted over
/// every sub-multiset. Requires `x ↔ y` in `m`.
pub fn switching_check_fixed(
    g: &Multigraph,
    m: &Multiplicities,
    x: Vertex,
    y: Vertex,
    a: &VertexSet,
    limits: &Limits,
) -> Result<SwitchingCounts> {
    g.check_distinct_pair(x, y)?;
    for v in a.iter() {
        g.check_vertex(v)?;
    }
    if !g.connected_in(m, x, y)? {
        return Err(Error::NotConnected);
    }
    Ok(SwitchingTable::new(g, m, limits)?.counts(x, y, a))
}

/// The switching lemma for two independent Poisson currents, integrated
/// over the union: `ℙ(∂M = {x,y}, ∂M′ = A, x ↔ y in m + m′)` against
/// `ℙ(∂M = ∅, ∂M′ = A △ {x,y}, x ↔ y in m + m′)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SwitchingPoissonCheck {
    /// Both sides summed directly over pairs `(m, m′)` with entries `≤ M`.
    pub lhs_direct: f64,
    pub rhs_direct: f64,
    /// Both sides from the union law, untruncated.
    pub lhs_union: f64,
    pub rhs_union: f64,
    /// Mass of the pairs left out of the direct sums.
    pub tail_bound: f64,
    pub truncation_level: u32,
}

impl SwitchingPoissonCheck {
    pub fn discrepancy(&self) -> f64 {
        let d = (self.lhs_direct - self.rhs_direct).abs();
        d.max((self.lhs_direct - self.lhs_union).abs()).max((self.rhs_direct - self.rhs_union).abs())
    }

    pub fn passes(&self) -> bool {
        self.lhs_union == self.rhs_union && self.discrepancy() <= self.tail_bound + 1e-14
    }
}

/// Per-edge weights of the states "zero", "even and positive", "odd".
type StateWeights = [f64; 3];

/// Law of `(support, parity)` for a multiplicity vector with independent
/// entries, from per-edge state weights.
fn state_table(g: &Multigraph, weights: &[StateWeights]) -> BTreeMap<(u64, u64), f64> {
    let e = g.edge_count();
    let mut table = BTreeMap::new();
    let mut state = vec![0u8; e];
    loop {
        let (mut support, mut parity, mut w) = (0u64, 0u64, 1.0);
        for (i, &s) in state.iter().enumerate() {
            w *= weights[i][s as usize];
            if s > 0 {
                support |= 1 << i;
            }
            if s == 2 {
                let (a, b) = g.edges()[i];
                parity ^= (1 << a) ^ (1 << b);
            }
        }
        if w != 0.0 {
            *table.entry((support, parity)).or_insert(0.0) += w;
        }
        let Some(i) = state.iter().position(|&s| s < 2) else { break };
        state[..i].iter_mut().for_each(|s| *s = 0);
        state[i] += 1;
    }
    table
}

/// Per-edge state weights of `Po(λ)` restricted to `{0, …, M}`.
pub(crate) fn truncated_states(lambda: f64, m: u32) -> StateWeights {
    let mut w = [0.0; 3];
    let mut p = exp(-lambda);
    for k in 0..=m {
        w[if k == 0 { 0 } else { 1 + (k % 2) as usize }] += p;
        p *= lambda / (k + 1) as f64;
    }
    w
}

/// Law of `(support, ∂)` of one Poisson current truncated at `M`, for
/// the two-copy sums.
pub(crate) fn truncated_state_table(
    g: &Multigraph,
    lambda: &IntensityVector,
    m: u32,
    limits: &Limits,
) -> Result<BTreeMap<(u64, u64), f64>> {
    lambda.check_len(g.edge_count())?;
    check("edge states", crate::limits::saturating_pow(3, g.edge_count()), limits.multiplicity_vectors)?;
    if g.vertex_count() > 64 {
        return Err(Error::invalid("source sets are tracked for at most 64 vertices"));
    }
    let w: Vec<StateWeights> = lambda.iter().map(|l| truncated_states(l, m)).collect();
    Ok(state_table(g, &w))
}

/// `ℙ(some P(e) > M)` bound for one current.
pub(crate) fn single_tail(lambda: &IntensityVector, m: u32) -> f64 {
    lambda.iter().map(|l| exp(-l) * exp_series_tail(l, m)).sum::<f64>() * (1.0 + 1e-12)
}

/// Sum of `T[s1, p1] T[s2, p2]` over pairs with the given parities and
/// `x ↔ y` through `s1 ∪ s2`.
pub(crate) fn paired_mass(
    g: &Multigraph,
    table: &BTreeMap<(u64, u64), f64>,
    p1: u64,
    p2: u64,
    x: Vertex,
    y: Vertex,
) -> f64 {
    let first: Vec<(u64, f64)> = table.iter().filter(|((_, p), _)| *p == p1).map(|((s, _), w)| (*s, *w)).collect();
    let second: Vec<(u64, f64)> = table.iter().filter(|((_, p), _)| *p == p2).map(|((s, _), w)| (*s, *w)).collect();
    let mut conn: BTreeMap<u64, bool> = BTreeMap::new();
    let mut total = 0.0;
    for &(s1, w1) in &first {
        for &(s2, w2) in &second {
            let joined = *conn.entry(s1 | s2).or_insert_with(|| g.connected_by_mask(s1 | s2, x, y));
            if joined {
                total += w1 * w2;
            }
        }
    }
    total
}

/// Checks the two-current switching lemma: direct truncated sums over
/// `(m, m′)` against the union law, where `u = m + m′` has entries
/// `Po(2λ)` and, given `u`, `M` is a uniform labelled subset.
pub fn switching_check_poisson(
    g: &Multigraph,
    lambda: &IntensityVector,
    x: Vertex,
    y: Vertex,
    a: &VertexSet,
    m: u32,
    limits: &Limits,
) -> Result<SwitchingPoissonCheck> {
    g.check_distinct_pair(x, y)?;
    for v in a.iter() {
        g.check_vertex(v)?;
    }
    let table = truncated_state_table(g, lambda, m, limits)?;
    let xy = 1u64 << x | 1u64 << y;
    let am = mask_of(a);
    let lhs_direct = paired_mass(g, &table, xy, am, x, y);
    let rhs_direct = paired_mass(g, &table, 0, am ^ xy, x, y);

    // Union side: per-edge state of u, then the fraction of parity
    // patterns π ⊆ supp(u) with the required source set.
    let union_w: Vec<StateWeights> = lambda
        .iter()
        .map(|l| {
            let z = exp(-2.0 * l);
            [z, z * (libm::cosh(2.0 * l) - 1.0), z * libm::sinh(2.0 * l)]
        })
        .collect();
    let union = state_table(g, &union_w);
    let (mut lhs_union, mut rhs_union) = (0.0, 0.0);
    for (&(support, parity), &w) in &union {
        if parity != am ^ xy || !g.connected_by_mask(support, x, y) {
            continue;
        }
        let (mut to_pair, mut to_empty) = (0u64, 0u64);
        let bits: Vec<usize> = (0..g.edge_count()).filter(|i| support >> i & 1 == 1).collect();
        for sub in 0..1u64 << bits.len() {
            let p = bits
                .iter()
                .enumerate()
                .filter(|(j, _)| sub >> j & 1 == 1)
                .fold(0u64, |acc, (_, &i)| {
                    let (a, b) = g.edges()[i];
                    acc ^ (1 << a) ^ (1 << b)
                });
            to_pair += (p == xy) as u64;
            to_empty += (p == 0) as u64;
        }
        let scale = w / (1u64 << bits.len()) as f64;
        lhs_union += scale * to_pair as f64;
        rhs_union += scale * to_empty as f64;
    }
    Ok(SwitchingPoissonCheck {
        lhs_direct,
        rhs_direct,
        lhs_union,
        rhs_union,
        tail_bound: 2.0 * single_tail(lambda, m),
        truncation_level: m,
    })
}
