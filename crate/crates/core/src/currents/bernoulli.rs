use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Num;

use crate::error::{Error, Result};
use crate::graph::{Multigraph, Vertex, VertexSet};
use crate::limits::Limits;
use crate::poisson::IntensityVector;

/// `p′ = ℙ(Po(λ) is odd) = (1 − e^{−2λ})/2`.
pub fn bernoulli_density(lambda: f64) -> Result<f64> {
    if !(lambda >= 0.0) {
        return Err(Error::invalid("intensity must be non-negative"));
    }
    Ok(-crate::math::expm1(-2.0 * lambda) / 2.0)
}

pub(crate) fn parity_of(g: &Multigraph, mask: u64) -> u64 {
    g.edges()
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .fold(0u64, |acc, (_, &(a, b))| acc ^ (1 << a) ^ (1 << b))
}

fn check<T>(g: &Multigraph, p: &[T], limits: &Limits) -> Result<()> {
    if p.len() != g.edge_count() {
        return Err(Error::LengthMismatch { expected: g.edge_count(), found: p.len() });
    }
    if g.vertex_count() > 64 {
        return Err(Error::invalid("source sets are tracked for at most 64 vertices"));
    }
    limits.check_rc(g.edge_count())
}

/// Law of the source set `∂ω` of a Bernoulli(`p_e`) edge subset, keyed by
/// the vertex bit mask of `∂ω`.
pub fn source_distribution<T: Clone + Num>(g: &Multigraph, p: &[T], limits: &Limits) -> Result<BTreeMap<u64, T>> {
    check(g, p, limits)?;
    let closed: Vec<T> = p.iter().map(|pe| T::one() - pe.clone()).collect();
    let mut table: BTreeMap<u64, T> = BTreeMap::new();
    for mask in 0..1u64 << g.edge_count() {
        let w = (0..g.edge_count()).fold(T::one(), |w, i| {
            w * if mask >> i & 1 == 1 { p[i].clone() } else { closed[i].clone() }
        });
        let slot = table.entry(parity_of(g, mask)).or_insert_with(T::zero);
        *slot = slot.clone() + w;
    }
    Ok(table)
}

/// `φ_{p′}(∂ω = A)` under the product measure. Zero when `|A|` is odd.
pub fn source_prob<T: Clone + Num>(g: &Multigraph, p: &[T], a: &VertexSet, limits: &Limits) -> Result<T> {
    for v in a.iter() {
        g.check_vertex(v)?;
    }
    check(g, p, limits)?;
    if a.len() % 2 == 1 {
        return Ok(T::zero());
    }
    let target = a.to_mask().unwrap_or(0);
    Ok(source_distribution(g, p, limits)?.remove(&target).unwrap_or_else(T::zero))
}

/// `σ(x, y) = ℙ_λ(∂P = {x, y}) / ℙ_λ(∂P = ∅)` through the parity densities.
pub fn sigma_source_ratio(g: &Multigraph, lambda: &IntensityVector, x: Vertex, y: Vertex, limits: &Limits) -> Result<f64> {
    g.check_distinct_pair(x, y)?;
    lambda.check_len(g.edge_count())?;
    let p: Vec<f64> = lambda.iter().map(bernoulli_density).collect::<Result<_>>()?;
    let table = source_distribution(g, &p, limits)?;
    let empty = table.get(&0).copied().unwrap_or(0.0);
    let pair = table.get(&(1 << x | 1 << y)).copied().unwrap_or(0.0);
    Ok(pair / empty)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{exact, ratio};
    use libm::{exp, tanh};

    fn l() -> Limits {
        Limits::default()
    }

    #[test]
    fn density_examples() {
        assert_eq!(bernoulli_density(0.0).unwrap(), 0.0);
        assert!((bernoulli_density(0.5).unwrap() - (1.0 - exp(-1.0)) / 2.0).abs() < 1e-16);
        assert!(bernoulli_density(40.0).unwrap() <= 0.5);
        assert!((0.5 - bernoulli_density(40.0).unwrap()) < 1e-15);
        assert!(bernoulli_density(-1.0).is_err());
    }

    #[test]
    fn k2_and_triangle() {
        let k2 = Multigraph::k2();
        let p = [ratio(1, 3)];
        assert_eq!(source_prob(&k2, &p, &VertexSet::pair(0, 1), &l()).unwrap(), ratio(1, 3));
        assert_eq!(source_prob(&k2, &p, &VertexSet::empty(), &l()).unwrap(), ratio(2, 3));
        assert_eq!(source_prob(&k2, &p, &VertexSet::new([0]), &l()).unwrap(), exact(0));
        // Triangle, p′ = 1/4: ∂ω = {0,1} for ω = {01} or ω = {12, 20}.
        let t = Multigraph::triangle();
        let p = [ratio(1, 4), ratio(1, 4), ratio(1, 4)];
        let expected = ratio(1, 4) * ratio(3, 4) * ratio(3, 4) + ratio(3, 4) * ratio(1, 4) * ratio(1, 4);
        assert_eq!(expected, ratio(3, 16));
        assert_eq!(source_prob(&t, &p, &VertexSet::pair(0, 1), &l()).unwrap(), expected);
    }

    #[test]
    fn handshake_and_mass() {
        let g = Multigraph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 1)]).unwrap();
        let p: Vec<_> = (1..=6).map(|i| ratio(i, 8)).collect();
        let table = source_distribution(&g, &p, &l()).unwrap();
        assert!(table.keys().all(|m| m.count_ones() % 2 == 0));
        assert_eq!(table.values().fold(exact(0), |a, b| a + b), exact(1));
    }

    #[test]
    fn sigma_k2_is_tanh() {
        for lam in [0.0, 0.2, 0.5, 1.3] {
            let s = sigma_source_ratio(&Multigraph::k2(), &IntensityVector::uniform(lam, 1).unwrap(), 0, 1, &l()).unwrap();
            assert!((s - tanh(lam)).abs() < 1e-15);
        }
    }
}
