//! Truncated per-edge Poisson series and the subset sums they feed.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::IntensityVector;
use crate::error::{Error, Result};
use crate::graph::{Multigraph, Multiplicities, Vertex};
use crate::limits::{check, saturating_pow, Limits};
use crate::math::{exp, exp_series_tail};
use crate::poly::{ExactScalar, FlowCounter};

/// The exact rational value of a finite `f64`.
pub(crate) fn to_exact(x: f64) -> ExactScalar {
    ExactScalar::from_float(x).expect("finite value")
}

pub(crate) fn to_f64(x: &ExactScalar) -> f64 {
    num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::NAN)
}

/// `Σ_{k=0}^{M} λ^k / k! · c_k`.
fn poisson_series(lambda: &ExactScalar, m: u32, mut coeff: impl FnMut(u32) -> ExactScalar) -> ExactScalar {
    let mut term = ExactScalar::one();
    let mut sum = coeff(0);
    for k in 1..=m {
        term = term * lambda / ExactScalar::from_integer(k.into());
        let c = coeff(k);
        if !c.is_zero() {
            sum += &term * c;
        }
    }
    sum
}

/// Distinct intensities and the class of each edge. Edges with equal `λ`
/// share their series and their powers.
struct Classes {
    values: Vec<f64>,
    of_edge: Vec<usize>,
    sizes: Vec<usize>,
}

impl Classes {
    fn new(lambda: &IntensityVector) -> Self {
        let mut values: Vec<f64> = Vec::new();
        let mut of_edge = Vec::with_capacity(lambda.len());
        for l in lambda.iter() {
            let i = match values.iter().position(|v| v.to_bits() == l.to_bits()) {
                Some(i) => i,
                None => {
                    values.push(l);
                    values.len() - 1
                }
            };
            of_edge.push(i);
        }
        let mut sizes = vec![0; values.len()];
        for &c in &of_edge {
            sizes[c] += 1;
        }
        Classes { values, of_edge, sizes }
    }

    fn key(&self, mask: u64) -> Vec<u8> {
        let mut key = vec![0u8; self.values.len()];
        for (e, &c) in self.of_edge.iter().enumerate() {
            if mask >> e & 1 == 1 {
                key[c] += 1;
            }
        }
        key
    }

    /// `Π_c in_c^{key_c} · out_c^{size_c − key_c}`.
    fn product(&self, key: &[u8], inside: &[Vec<ExactScalar>], outside: &[Vec<ExactScalar>]) -> ExactScalar {
        key.iter().enumerate().fold(ExactScalar::one(), |acc, (c, &k)| {
            acc * &inside[c][k as usize] * &outside[c][self.sizes[c] - k as usize]
        })
    }

    fn powers(&self, base: &[ExactScalar]) -> Vec<Vec<ExactScalar>> {
        base.iter()
            .zip(&self.sizes)
            .map(|(b, &n)| {
                let mut p = vec![ExactScalar::one()];
                for _ in 0..n {
                    let next = p.last().unwrap() * b;
                    p.push(next);
                }
                p
            })
            .collect()
    }
}

fn with_pair(g: &Multigraph, pinned: Option<(Vertex, Vertex)>) -> Result<Multigraph> {
    match pinned {
        Some((x, y)) => g.add_pair_edge(x, y),
        None => Ok(g.clone()),
    }
}

/// `e^{Σλ} · Σ_{m ≤ M} ℙ_λ(m) C(G_m; q)`, exactly. With `pinned = (x, y)`
/// the graph is `G_m` plus one fixed `(x, y)` edge.
pub(crate) fn flow_series_sum(
    g: &Multigraph,
    lambda: &IntensityVector,
    q: u32,
    pinned: Option<(Vertex, Vertex)>,
    m: u32,
    limits: &Limits,
) -> Result<ExactScalar> {
    let e = g.edge_count();
    limits.check_subsets(e + pinned.is_some() as usize)?;
    let h = with_pair(g, pinned)?;
    let classes = Classes::new(lambda);
    let pinned_bit = if pinned.is_some() { 1u64 << e } else { 0 };
    let full = (1u64 << e) - 1;

    // Bit set in `z` means the bundle's net value is zero.
    let mut counter = FlowCounter::new(q);
    let mut coeff: BTreeMap<Vec<u8>, BigInt> = BTreeMap::new();
    for z in 0..=full {
        let c = counter.count(&h.spanning_subgraph((full & !z) | pinned_bit));
        if !c.is_zero() {
            *coeff.entry(classes.key(z)).or_default() += c;
        }
    }

    let qq = BigInt::from(q);
    let (zero, nonzero): (Vec<_>, Vec<_>) = classes
        .values
        .iter()
        .map(|&l| {
            let l = to_exact(l);
            let count = |k: u32, zero: bool| {
                let a = num_traits::pow(&qq - 1, k as usize);
                let sign = if k.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
                let n = if zero { a + (&qq - 1) * sign } else { a - sign };
                ExactScalar::from_integer(n / &qq)
            };
            (poisson_series(&l, m, |k| count(k, true)), poisson_series(&l, m, |k| count(k, false)))
        })
        .unzip();
    let zp = classes.powers(&zero);
    let np = classes.powers(&nonzero);
    Ok(coeff
        .iter()
        .map(|(key, c)| classes.product(key, &zp, &np) * ExactScalar::from_integer(c.clone()))
        .fold(ExactScalar::zero(), |a, b| a + b))
}

/// Bound on the scaled neglected mass of [`flow_series_sum`], from
/// `C(G_m; q) ≤ (q−1)^{Σm}`.
pub(crate) fn flow_tail_scaled(lambda: &IntensityVector, q: u32, pinned: bool, m: u32) -> f64 {
    let r = (q - 1) as f64;
    let whole: Vec<f64> = lambda.iter().map(|l| exp(l * r)).collect();
    let tails: Vec<f64> = lambda.iter().map(|l| exp_series_tail(l * r, m)).collect();
    let pin = if pinned { r } else { 1.0 };
    leave_one_out(&whole, &tails) * pin * (1.0 + 1e-12)
}

/// `Σ_e Π_{f ≠ e} whole_f · tail_e`.
fn leave_one_out(whole: &[f64], tails: &[f64]) -> f64 {
    (0..whole.len())
        .map(|e| tails[e] * whole.iter().enumerate().filter(|(f, _)| *f != e).map(|(_, w)| w).product::<f64>())
        .sum()
}

/// `e^{Σλ} · Σ_{m ≤ M} ℙ_λ(m) F(G_m; q)` for real `q > 0`, where
/// `F(H; q) = Σ_{S ⊆ E(H)} (−1)^{|E(H) ∖ S|} q^{|S| − r(S)}` is the flow
/// polynomial evaluated at `q`, equal to `(−1)^{|V|−1+|E(H)|} T(H; 0, 1−q)`.
///
/// Grouping the copies of each bundle by whether any of them is in `S`
/// gives the per-edge factors `(q−1)^m − (−1)^m` (some copy in `S`) and
/// `(−1)^m` (none), with `q^{−r(S)}` depending on the base edges only.
pub(crate) fn tutte_series_sum(
    g: &Multigraph,
    lambda: &IntensityVector,
    q: &ExactScalar,
    pinned: Option<(Vertex, Vertex)>,
    m: u32,
    limits: &Limits,
) -> Result<ExactScalar> {
    if *q <= ExactScalar::zero() {
        return Err(Error::invalid("q must be positive"));
    }
    let e = g.edge_count();
    limits.check_subsets(e + pinned.is_some() as usize)?;
    let h = with_pair(g, pinned)?;
    let classes = Classes::new(lambda);
    let n = g.vertex_count();
    let rank = |mask: u64| n - h.component_count_mask(mask);

    // key: class counts of S, rank without and with the pinned edge
    let mut table: BTreeMap<(Vec<u8>, usize, usize), i64> = BTreeMap::new();
    for s in 0..1u64 << e {
        let with = if pinned.is_some() { rank(s | 1 << e) } else { 0 };
        *table.entry((classes.key(s), rank(s), with)).or_default() += 1;
    }

    let inv_q = q.recip();
    let inv_pow: Vec<ExactScalar> = (0..=n).map(|r| num_traits::pow(inv_q.clone(), r)).collect();
    let minus_one = -ExactScalar::one();
    let (inside, outside): (Vec<_>, Vec<_>) = classes
        .values
        .iter()
        .map(|&l| {
            let l = to_exact(l);
            let alt = |k: u32| if k.is_multiple_of(2) { ExactScalar::one() } else { minus_one.clone() };
            let base = q - ExactScalar::one();
            let inside = poisson_series(&l, m, |k| num_traits::pow(base.clone(), k as usize) - alt(k));
            (inside, poisson_series(&l, m, alt))
        })
        .unzip();
    let ip = classes.powers(&inside);
    let op = classes.powers(&outside);
    let mut total = ExactScalar::zero();
    for ((key, r, r_with), count) in table {
        // The pinned edge has multiplicity one: factor q when in S, −1 when not.
        let weight = if pinned.is_some() { &inv_pow[r_with] * q - &inv_pow[r] } else { inv_pow[r].clone() };
        if weight.is_zero() {
            continue;
        }
        total += classes.product(&key, &ip, &op) * weight * ExactScalar::from_integer(count.into());
    }
    Ok(total)
}

/// Bound on the scaled neglected mass of [`tutte_series_sum`], from
/// `|F(G_m; q)| ≤ max(1, q^{1−|V|}) Π_e a(m_e)` with `a(0) = 1` and
/// `a(m) = 2 + |q−1|^m`.
pub(crate) fn tutte_tail_scaled(lambda: &IntensityVector, q: f64, vertices: usize, pinned: bool, m: u32) -> f64 {
    let r = (q - 1.0).abs();
    let whole: Vec<f64> = lambda.iter().map(|l| 2.0 * exp(l) - 2.0 + exp(l * r)).collect();
    let tails: Vec<f64> = lambda.iter().map(|l| 2.0 * exp_series_tail(l, m) + exp_series_tail(l * r, m)).collect();
    let k = if q >= 1.0 { 1.0 } else { libm::pow(q, 1.0 - vertices as f64) };
    let pin = if pinned { 2.0 + r } else { 1.0 };
    k * leave_one_out(&whole, &tails) * pin * (1.0 + 1e-12)
}

/// Literal truncated sum over every `m ∈ {0, …, M}^E`, flow counts by
/// deletion–contraction on the expanded multigraph. Scaled by `e^{Σλ}`.
pub(crate) fn flow_series_enum(
    g: &Multigraph,
    lambda: &IntensityVector,
    q: u32,
    pinned: Option<(Vertex, Vertex)>,
    m: u32,
    limits: &Limits,
) -> Result<ExactScalar> {
    let e = g.edge_count();
    check("multiplicity vectors", saturating_pow(m as u128 + 1, e), limits.multiplicity_vectors)?;
    // weights[e][k] = λ_e^k / k!
    let weights: Vec<Vec<ExactScalar>> = lambda
        .iter()
        .map(|l| {
            let l = to_exact(l);
            let mut w = vec![ExactScalar::one()];
            for k in 1..=m {
                let next = w.last().unwrap() * &l / ExactScalar::from_integer(k.into());
                w.push(next);
            }
            w
        })
        .collect();
    let mut counter = FlowCounter::new(q);
    let mut total = ExactScalar::zero();
    for mv in Multiplicities::all_bounded(e, m) {
        let mut gm = g.expand(&mv)?;
        if let Some((x, y)) = pinned {
            gm = gm.add_pair_edge(x, y)?;
        }
        let c = counter.count(&gm);
        if c.is_zero() {
            continue;
        }
        let w = mv.as_slice().iter().enumerate().fold(ExactScalar::one(), |w, (i, &k)| w * &weights[i][k as usize]);
        total += w * ExactScalar::from_integer(c);
    }
    Ok(total)
}
