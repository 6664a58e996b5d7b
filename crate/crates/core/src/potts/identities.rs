use alloc::vec;

use num_traits::{One, Signed, Zero};

use super::{edge_prob, potts_sigma_exact, potts_sigma_matrix, rc_connection_matrix, PottsParams};
use crate::error::{Error, Result};
use crate::graph::{Multigraph, Vertex};
use crate::limits::Limits;
use crate::poly::{exact, whitney_eval, whitney_eval_f64, ExactScalar};

/// Worst discrepancy of `σ(x, y) = (q − 1) φ_{p,q}(x ↔ y)` over all pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrConnReport<T> {
    pub worst: T,
    pub pair: (Vertex, Vertex),
    pub pairs: usize,
}

/// Compares the Potts two-point function with the random-cluster
/// connectivity at `p_e = 1 − e^{−λ_e q}`.
pub fn verify_corrconn(g: &Multigraph, params: &PottsParams, limits: &Limits) -> Result<CorrConnReport<f64>> {
    let sigma = potts_sigma_matrix(g, params, limits)?;
    let conn = rc_connection_matrix(g, &edge_prob(params), &(params.q() as f64), limits)?;
    let q = params.q() as f64;
    let mut report = CorrConnReport { worst: 0.0, pair: (0, 0), pairs: 0 };
    for x in 0..g.vertex_count() {
        for y in x + 1..g.vertex_count() {
            let d = (sigma[x][y] - (q - 1.0) * conn[x][y]).abs();
            report.pairs += 1;
            if d > report.worst || report.pairs == 1 {
                report.worst = d;
                report.pair = (x, y);
            }
        }
    }
    Ok(report)
}

/// Exact version of [`verify_corrconn`], parameterized by rational `p_e`.
pub fn verify_corrconn_exact(
    g: &Multigraph,
    q: u32,
    p: &[ExactScalar],
    limits: &Limits,
) -> Result<CorrConnReport<ExactScalar>> {
    let conn = rc_connection_matrix(g, p, &exact(q as i64), limits)?;
    let mut report = CorrConnReport { worst: ExactScalar::zero(), pair: (0, 0), pairs: 0 };
    for x in 0..g.vertex_count() {
        for y in x + 1..g.vertex_count() {
            let s = potts_sigma_exact(g, q, p, x, y, limits)?;
            let d = (s - exact(q as i64 - 1) * &conn[x][y]).abs();
            report.pairs += 1;
            if d > report.worst || report.pairs == 1 {
                report.worst = d;
                report.pair = (x, y);
            }
        }
    }
    Ok(report)
}

/// `Z^RC − q^{|V|} (1 − p)^{|E|} W(p/(q(1 − p)), p/(1 − p))` for uniform `p < 1`.
pub fn verify_rc_whitney(g: &Multigraph, p: &ExactScalar, q: &ExactScalar, limits: &Limits) -> Result<ExactScalar> {
    if p.is_one() || q.is_zero() {
        return Err(Error::invalid("need p < 1 and q ≠ 0"));
    }
    let lhs = super::rc_partition(g, &vec![p.clone(); g.edge_count()], q, limits)?;
    let closed = ExactScalar::one() - p;
    let v = p / &closed;
    let u = &v / q;
    let w = whitney_eval(g, &u, &v, limits)?;
    let rhs = num_traits::pow(q.clone(), g.vertex_count()) * num_traits::pow(closed, g.edge_count()) * w;
    Ok(lhs - rhs)
}

/// Float version of [`verify_rc_whitney`]; returns the relative difference.
pub fn verify_rc_whitney_f64(g: &Multigraph, p: f64, q: f64, limits: &Limits) -> Result<f64> {
    if !(0.0..1.0).contains(&p) || !(q > 0.0) {
        return Err(Error::invalid("need 0 ≤ p < 1 and q > 0"));
    }
    let lhs = super::rc_partition(g, &vec![p; g.edge_count()], &q, limits)?;
    let v = p / (1.0 - p);
    let w = whitney_eval_f64(g, v / q, v, limits)?;
    let rhs = crate::math::powi(q, g.vertex_count() as u32) * crate::math::powi(1.0 - p, g.edge_count() as u32) * w;
    Ok((lhs - rhs).abs() / lhs.abs().max(f64::MIN_POSITIVE))
}
