use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::expect::{adapt_ratio, exact_expect_flow, RatioParts, Truncation};
use super::series::{to_exact, to_f64, tutte_series_sum, tutte_tail_scaled};
use super::IntensityVector;
use crate::currents::{bernoulli_density, source_prob};
use crate::error::{Error, Result};
use crate::graph::{Multigraph, Vertex, VertexSet};
use crate::limits::Limits;
use crate::math::{exp, log1p, powi};
use crate::poly::{exact, ExactScalar};
use crate::potts::{potts_partition, rc_connection, rc_q_moment, PottsParams};

/// Two sides of an identity. The check passes when it is certified and
/// `discrepancy ≤ bound + slack`, where `bound` accounts for truncation and
/// `slack` for floating-point rounding.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub discrepancy: f64,
    pub bound: f64,
    pub slack: f64,
    pub truncation_level: Option<u32>,
    pub certified: bool,
}

impl IdentityCheck {
    fn new(lhs: f64, rhs: f64, bound: f64, truncation_level: Option<u32>) -> Self {
        IdentityCheck {
            lhs,
            rhs,
            discrepancy: (lhs - rhs).abs(),
            bound,
            slack: 1e-12 * lhs.abs().max(rhs.abs()).max(1.0),
            truncation_level,
            certified: true,
        }
    }

    pub fn passes(&self) -> bool {
        self.certified && self.discrepancy <= self.bound + self.slack
    }
}

fn check_p(p: f64) -> Result<()> {
    if (0.0..1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::invalid("p must lie in [0, 1)"))
    }
}

/// `λ = −ln(1 − p)/q`, so that `p = 1 − e^{−λq}`.
fn intensity_for(p: f64, q: f64, edges: usize) -> Result<IntensityVector> {
    IntensityVector::uniform(-log1p(-p) / q, edges)
}

/// `e^{−Σλ} Z^P = q^{|V|} 𝔼_λ(C(G_P; q))` with `β = 1`, `J = λ`.
pub fn verify_partition_identity(
    g: &Multigraph,
    lambda: &IntensityVector,
    q: u32,
    truncation: impl Into<Truncation>,
    limits: &Limits,
) -> Result<IdentityCheck> {
    let params = PottsParams::from_intensities(q, lambda.as_slice().to_vec())?;
    let lhs = exp(-lambda.total()) * potts_partition(g, &params, limits)?;
    let e = exact_expect_flow(g, lambda, q, truncation, limits)?;
    let scale = powi(q as f64, g.vertex_count() as u32);
    Ok(IdentityCheck::new(lhs, scale * e.value, scale * e.tail_bound, Some(e.truncation_level)))
}

/// `φ_p(q^{k(ω)}) = (1−p)^{|E|(q−2)/q} q^{|V|} 𝔼_λ(C(G_P; q))` at `p = 1 − e^{−λq}`.
pub fn verify_compflow(
    g: &Multigraph,
    p: f64,
    q: u32,
    truncation: impl Into<Truncation>,
    limits: &Limits,
) -> Result<IdentityCheck> {
    check_p(p)?;
    let lambda = intensity_for(p, q as f64, g.edge_count())?;
    let pe = alloc::vec![to_exact(p); g.edge_count()];
    let lhs = to_f64(&rc_q_moment(g, &pe, &exact(q as i64), limits)?);
    let e = exact_expect_flow(g, &lambda, q, truncation, limits)?;
    let scale = libm::pow(1.0 - p, g.edge_count() as f64 * (q as f64 - 2.0) / q as f64)
        * powi(q as f64, g.vertex_count() as u32);
    Ok(IdentityCheck::new(lhs, scale * e.value, scale * e.tail_bound, Some(e.truncation_level)))
}

/// `φ_p(2^{k(ω)}) = 2^{|V|} ℙ_λ(G_P is even)` at `p = 1 − e^{−2λ}`, the
/// right side by reducing multiplicities mod 2.
pub fn verify_curiosity(g: &Multigraph, p: f64, limits: &Limits) -> Result<IdentityCheck> {
    check_p(p)?;
    let lhs = rc_q_moment(g, &alloc::vec![p; g.edge_count()], &2.0, limits)?;
    let lambda = -log1p(-p) / 2.0;
    let odd = alloc::vec![bernoulli_density(lambda)?; g.edge_count()];
    let even = source_prob(g, &odd, &VertexSet::empty(), limits)?;
    Ok(IdentityCheck::new(lhs, powi(2.0, g.vertex_count() as u32) * even, 0.0, None))
}

/// `φ_p(2^{k(ω)}) − 2^{|V|} φ_{p/2}(the open graph is even)`, exactly.
pub fn verify_even_open_identity(g: &Multigraph, p: &ExactScalar, limits: &Limits) -> Result<ExactScalar> {
    if *p < ExactScalar::zero() || *p > ExactScalar::one() {
        return Err(Error::invalid("p must lie in [0, 1]"));
    }
    let lhs = rc_q_moment(g, &alloc::vec![p.clone(); g.edge_count()], &exact(2), limits)?;
    let half = alloc::vec![p / exact(2); g.edge_count()];
    let even = source_prob(g, &half, &VertexSet::empty(), limits)?;
    Ok(lhs - num_traits::pow(exact(2), g.vertex_count()) * even)
}

/// `σ(x, y) = ℙ_λ(G_P^{x,y} is even) / ℙ_λ(G_P is even)` for `q = 2`. Both
/// probabilities are exact finite sums over edge parities; the extra edge
/// is always present.
pub fn even_ratio_sigma(g: &Multigraph, lambda: &IntensityVector, x: Vertex, y: Vertex, limits: &Limits) -> Result<f64> {
    g.check_distinct_pair(x, y)?;
    lambda.check_len(g.edge_count())?;
    let odd: Vec<f64> = lambda.iter().map(bernoulli_density).collect::<Result<_>>()?;
    let den = source_prob(g, &odd, &VertexSet::empty(), limits)?;
    let mut with_pair = odd;
    with_pair.push(1.0);
    let num = source_prob(&g.add_pair_edge(x, y)?, &with_pair, &VertexSet::empty(), limits)?;
    Ok(num / den)
}

/// `(q−1) φ_{p,q}(x ↔ y)` against the ratio of truncated expectations of
/// signed Tutte values `(−1)^{1+|E_P|} T(G_P^{x,y}; 0, 1−q)` and
/// `(−1)^{|E_P|} T(G_P; 0, 1−q)`, for real `q > 0`.
///
/// The summands change sign, so the enclosure is two-sided and uses the
/// growth bound `|T(G_m; 0, 1−q)| ≤ max(1, q^{1−|V|}) Π_e (2 + |1−q|^{m_e})`.
/// The result is marked uncertified when the denominator enclosure reaches
/// zero or a target cannot be met within the truncation cap.
pub fn verify_flowconn_tutte(
    g: &Multigraph,
    p: f64,
    q: f64,
    x: Vertex,
    y: Vertex,
    truncation: impl Into<Truncation>,
    limits: &Limits,
) -> Result<IdentityCheck> {
    check_p(p)?;
    g.check_distinct_pair(x, y)?;
    if !(q.is_finite() && q > 0.0) {
        return Err(Error::invalid("q must be positive"));
    }
    let lambda = intensity_for(p, q, g.edge_count())?;
    let qx = to_exact(q);
    let pe = alloc::vec![to_exact(p); g.edge_count()];
    let lhs = (q - 1.0) * to_f64(&rc_connection(g, &pe, &qx, x, y, limits)?);

    let n = g.vertex_count();
    let tails = |m| (tutte_tail_scaled(&lambda, q, n, true, m), tutte_tail_scaled(&lambda, q, n, false, m));
    let eval = |m| -> Result<RatioParts> {
        let (num_tail, den_tail) = tails(m);
        Ok(RatioParts {
            num: tutte_series_sum(g, &lambda, &qx, Some((x, y)), m, limits)?,
            den: tutte_series_sum(g, &lambda, &qx, None, m, limits)?,
            num_tail,
            den_tail,
            one_sided: false,
            level: m,
        })
    };
    let truncation = truncation.into();
    let parts = match truncation {
        Truncation::Level(m) => eval(m)?,
        Truncation::Target(t) => adapt_ratio(limits, t, tails, eval)?,
    };
    if parts.den.is_zero() {
        return Err(Error::DegenerateDenominator);
    }
    let r = parts.finish();
    let mut check = IdentityCheck::new(lhs, r.value, r.bound, Some(r.truncation_level));
    check.certified = r.certified && !matches!(truncation, Truncation::Target(t) if r.bound > t);
    Ok(check)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ratio;
    use crate::potts::potts_sigma;
    use libm::tanh;

    fn l() -> Limits {
        Limits::default()
    }

    #[test]
    fn partition_identity() {
        let lam0 = IntensityVector::uniform(0.0, 3).unwrap();
        let c = verify_partition_identity(&Multigraph::triangle(), &lam0, 3, 4, &l()).unwrap();
        assert_eq!((c.lhs, c.rhs, c.bound), (27.0, 27.0, 0.0));
        let k2 = verify_partition_identity(&Multigraph::k2(), &IntensityVector::uniform(0.5, 1).unwrap(), 2, 30, &l())
            .unwrap();
        assert!(k2.passes() && k2.bound < 1e-20, "{k2:?}");
        let t = verify_partition_identity(&Multigraph::triangle(), &IntensityVector::uniform(0.2, 3).unwrap(), 4, 20, &l())
            .unwrap();
        assert!(t.passes(), "{t:?}");
    }

    #[test]
    fn compflow_identity() {
        let c = verify_compflow(&Multigraph::triangle(), 0.0, 3, 5, &l()).unwrap();
        assert_eq!((c.lhs, c.rhs), (27.0, 27.0));
        let k2 = verify_compflow(&Multigraph::k2(), 0.5, 3, 25, &l()).unwrap();
        assert!(k2.passes(), "{k2:?}");
        let k4 = verify_compflow(&Multigraph::k4(), 0.3, 2, Truncation::Target(1e-12), &l()).unwrap();
        assert!(k4.passes(), "{k4:?}");
    }

    #[test]
    fn curiosity_and_even_open() {
        for g in [Multigraph::k2(), Multigraph::triangle(), Multigraph::k4()] {
            let c = verify_curiosity(&g, 0.37, &l()).unwrap();
            assert!(c.passes(), "{c:?}");
            for p in [ratio(0, 1), ratio(1, 4), ratio(1, 2), ratio(2, 3), ratio(1, 1)] {
                assert!(verify_even_open_identity(&g, &p, &l()).unwrap().is_zero());
            }
        }
        // K2 at p = 1/2: 3 = 4 · 3/4.
        let k2 = Multigraph::k2();
        let lhs = rc_q_moment(&k2, &[ratio(1, 2)], &exact(2), &l()).unwrap();
        assert_eq!(lhs, exact(3));
    }

    #[test]
    fn even_ratio_routes() {
        let k2 = Multigraph::k2();
        assert_eq!(even_ratio_sigma(&k2, &IntensityVector::uniform(0.0, 1).unwrap(), 0, 1, &l()).unwrap(), 0.0);
        for lam in [0.2, 0.5, 1.0] {
            let s = even_ratio_sigma(&k2, &IntensityVector::uniform(lam, 1).unwrap(), 0, 1, &l()).unwrap();
            assert!((s - tanh(lam)).abs() < 1e-15);
        }
        let t = Multigraph::triangle();
        let s = even_ratio_sigma(&t, &IntensityVector::uniform(0.5, 3).unwrap(), 0, 1, &l()).unwrap();
        let spin = potts_sigma(&t, &PottsParams::uniform(2, 0.5, 3).unwrap(), 0, 1, &l()).unwrap();
        assert!((s - spin).abs() < 1e-12);
    }

    #[test]
    fn flowconn_tutte() {
        let zero = verify_flowconn_tutte(&Multigraph::triangle(), 0.0, 3.0, 0, 1, 4, &l()).unwrap();
        assert_eq!((zero.lhs, zero.rhs), (0.0, 0.0));
        // q = 2 against the parity route.
        let p = 1.0 - libm::exp(-1.0);
        let k2 = verify_flowconn_tutte(&Multigraph::k2(), p, 2.0, 0, 1, Truncation::Target(1e-10), &l()).unwrap();
        assert!(k2.passes(), "{k2:?}");
        let even = even_ratio_sigma(&Multigraph::k2(), &IntensityVector::uniform(0.5, 1).unwrap(), 0, 1, &l()).unwrap();
        assert!((k2.rhs - even).abs() < 1e-9);
        let t = verify_flowconn_tutte(&Multigraph::triangle(), 0.3, 3.0, 0, 1, 12, &l()).unwrap();
        assert!(t.passes(), "{t:?}");
        for q in [0.5, 1.5, 2.5] {
            let c = verify_flowconn_tutte(&Multigraph::triangle(), 0.4, q, 0, 2, Truncation::Target(1e-9), &l()).unwrap();
            assert!(c.passes(), "q={q}: {c:?}");
        }
    }
}
