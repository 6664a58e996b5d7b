use super::bernoulli::{bernoulli_density, source_distribution};
use super::switching::{paired_mass, single_tail, truncated_state_table};
use alloc::vec::Vec;

use crate::error::Result;
use crate::graph::{Multigraph, Vertex};
use crate::limits::Limits;
use crate::poisson::IntensityVector;

/// Both sides of a products-of-correlations identity. The two-copy
/// probability is a truncated sum, so `rhs` can only fall short of its
/// true value, by at most `bound`.
#[derive(Debug, Clone, PartialEq)]
pub struct ApplsCheck {
    pub lhs: f64,
    pub rhs: f64,
    /// The conditional connection probability under `ℚ_{A;∅}`; NaN when the
    /// conditioning event has probability zero.
    pub conditional: f64,
    pub bound: f64,
    pub truncation_level: u32,
}

impl ApplsCheck {
    pub fn discrepancy(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }

    pub fn passes(&self) -> bool {
        self.discrepancy() <= self.bound + 1e-12
    }
}

/// Exact `ℙ_λ(∂P = ·)` keyed by vertex mask.
fn source_law(g: &Multigraph, lambda: &IntensityVector, limits: &Limits) -> Result<impl Fn(u64) -> f64> {
    lambda.check_len(g.edge_count())?;
    let p: Vec<f64> = lambda.iter().map(bernoulli_density).collect::<Result<_>>()?;
    let table = source_distribution(g, &p, limits)?;
    Ok(move |mask| table.get(&mask).copied().unwrap_or(0.0))
}

/// `σ(x,y)² = ℚ_{∅;∅}(x ↔ y in P₁ + P₂)`.
///
/// The two-copy event is weighed under the joint law `ℙ_λ × ℙ_λ` and then
/// divided by `ℙ_λ(∂P = ∅)²`, the order of operations in the proof.
pub fn appls_identity_i(
    g: &Multigraph,
    lambda: &IntensityVector,
    x: Vertex,
    y: Vertex,
    m: u32,
    limits: &Limits,
) -> Result<ApplsCheck> {
    g.check_distinct_pair(x, y)?;
    let law = source_law(g, lambda, limits)?;
    let empty = law(0);
    let sigma = law(1 << x | 1 << y) / empty;
    let table = truncated_state_table(g, lambda, m, limits)?;
    let joint = paired_mass(g, &table, 0, 0, x, y);
    let rhs = joint / (empty * empty);
    Ok(ApplsCheck {
        lhs: sigma * sigma,
        rhs,
        conditional: rhs,
        bound: 2.0 * single_tail(lambda, m) / empty,
        truncation_level: m,
    })
}

/// `σ(x,y) σ(y,z) = σ(x,z) ℚ_{{x,z};∅}(x ↔ y in P₁ + P₂)`.
pub fn appls_identity_ii(
    g: &Multigraph,
    lambda: &IntensityVector,
    x: Vertex,
    y: Vertex,
    z: Vertex,
    m: u32,
    limits: &Limits,
) -> Result<ApplsCheck> {
    g.check_distinct_pair(x, y)?;
    g.check_distinct_pair(y, z)?;
    g.check_distinct_pair(x, z)?;
    let law = source_law(g, lambda, limits)?;
    let empty = law(0);
    let xz = law(1 << x | 1 << z);
    let sigma = |a: Vertex, b: Vertex| law(1 << a | 1 << b) / empty;
    let table = truncated_state_table(g, lambda, m, limits)?;
    let joint = paired_mass(g, &table, 1 << x | 1 << z, 0, x, y);
    Ok(ApplsCheck {
        lhs: sigma(x, y) * sigma(y, z),
        // σ(x,z) · joint/(ℙ(∂={x,z}) ℙ(∂=∅)) with ℙ(∂={x,z}) cancelled.
        rhs: joint / (empty * empty),
        conditional: if xz > 0.0 { joint / (xz * empty) } else { f64::NAN },
        bound: single_tail(lambda, m) * (empty + xz) / (empty * empty),
        truncation_level: m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use libm::tanh;

    fn l() -> Limits {
        Limits::default()
    }

    #[test]
    fn identity_i_examples() {
        let k2 = Multigraph::k2();
        let zero = appls_identity_i(&k2, &IntensityVector::uniform(0.0, 1).unwrap(), 0, 1, 4, &l()).unwrap();
        assert_eq!((zero.lhs, zero.rhs), (0.0, 0.0));
        let c = appls_identity_i(&k2, &IntensityVector::uniform(0.5, 1).unwrap(), 0, 1, 12, &l()).unwrap();
        assert!(c.passes(), "{c:?}");
        assert!((c.lhs - tanh(0.5) * tanh(0.5)).abs() < 1e-15);
        let t = Multigraph::triangle();
        let c = appls_identity_i(&t, &IntensityVector::uniform(0.4, 3).unwrap(), 0, 1, 8, &l()).unwrap();
        assert!(c.passes(), "{c:?}");
    }

    #[test]
    fn identity_ii_examples() {
        let path = Multigraph::path(3).unwrap();
        let zero = appls_identity_ii(&path, &IntensityVector::uniform(0.0, 2).unwrap(), 0, 1, 2, 4, &l()).unwrap();
        assert_eq!((zero.lhs, zero.rhs), (0.0, 0.0));
        let c = appls_identity_ii(&path, &IntensityVector::uniform(0.5, 2).unwrap(), 0, 1, 2, 20, &l()).unwrap();
        assert!(c.passes(), "{c:?}");
        // y sits on the only x–z path.
        assert!((c.conditional - 1.0).abs() < 1e-12);
        let t = Multigraph::triangle();
        let c = appls_identity_ii(&t, &IntensityVector::uniform(0.3, 3).unwrap(), 0, 1, 2, 8, &l()).unwrap();
        assert!(c.passes(), "{c:?}");
    }

    #[test]
    fn truncation_is_one_sided() {
        let t = Multigraph::triangle();
        let lam = IntensityVector::uniform(0.9, 3).unwrap();
        for m in 1..6 {
            let c = appls_identity_i(&t, &lam, 0, 1, m, &l()).unwrap();
            assert!(c.rhs <= c.lhs + 1e-15 && c.passes(), "M={m}: {c:?}");
        }
    }
}
