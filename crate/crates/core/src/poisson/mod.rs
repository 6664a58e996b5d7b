//! Poisson multigraphs `G_P`: every edge `e` of a base graph is replaced by
//! `P(e) ~ Poisson(λ_e)` parallel copies, independently.
//!
//! Expectations of flow counts over `G_P` are computed two ways. Monte
//! Carlo draws use one seeded stream per sample index, so serial and
//! parallel runs agree draw for draw. Exact evaluation truncates every
//! multiplicity at `M` and carries a certified bound on the neglected mass.
//!
//! The exact route never enumerates multiplicity vectors. A non-zero flow on
//! `G_m` is determined, bundle by bundle, by the net value `s_e` carried by
//! the `m_e` parallel copies, and the number of ways to write `s_e` as a sum
//! of `m_e` non-zero residues depends only on whether `s_e = 0`:
//!
//! ```text
//! N_m(0)  = ((q−1)^m + (q−1)(−1)^m) / q
//! N_m(≠0) = ((q−1)^m − (−1)^m) / q
//! C(G_m; q) = Σ_{Z ⊆ E} C(G∖Z; q) · Π_{e∈Z} N_{m_e}(0) · Π_{e∉Z} N_{m_e}(≠0)
//! ```
//!
//! The truncated Poisson average then factorizes over edges and is summed in
//! exact rationals, with `λ` taken as the exact value of its `f64`. Only the
//! common factor `e^{−Σλ}` is applied in floating point; it cancels from
//! every ratio.

mod expect;
mod identities;
mod sampling;
mod series;

use alloc::vec::Vec;

use crate::error::{Error, Result};

pub use expect::{
    exact_expect_flow, exact_expect_flow_enum, exact_expect_flow_pair, sigma_flow_ratio_exact, RatioBound,
    TruncatedExpectation, Truncation,
};
pub use identities::{
    even_ratio_sigma, verify_compflow, verify_curiosity, verify_even_open_identity, verify_flowconn_tutte,
    verify_partition_identity, IdentityCheck,
};
pub use sampling::{
    chunk_count, expect_flow_mc, poisson_inversion, sample_multiplicities, sample_stream, sigma_flow_ratio_mc, FlowSampler,
    McEstimate, MomentAccumulator, MC_CHUNK,
};

/// Per-edge Poisson intensities `λ_e ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntensityVector(Vec<f64>);

impl IntensityVector {
    pub fn new(lambda: Vec<f64>) -> Result<Self> {
        if lambda.iter().any(|l| !(l.is_finite() && *l >= 0.0)) {
            return Err(Error::invalid("intensities must be finite and non-negative"));
        }
        Ok(IntensityVector(lambda))
    }

    pub fn uniform(lambda: f64, edges: usize) -> Result<Self> {
        Self::new(alloc::vec![lambda; edges])
    }

    /// `λ_e = β J_e`.
    pub fn from_potts(params: &crate::potts::PottsParams) -> Self {
        IntensityVector(params.intensities())
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }

    pub(crate) fn check_len(&self, edges: usize) -> Result<()> {
        if self.0.len() == edges {
            Ok(())
        } else {
            Err(Error::LengthMismatch { expected: edges, found: self.0.len() })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(IntensityVector::new(alloc::vec![0.0, 1.5]).is_ok());
        assert!(IntensityVector::new(alloc::vec![-0.1]).is_err());
        assert!(IntensityVector::new(alloc::vec![f64::INFINITY]).is_err());
        assert_eq!(IntensityVector::uniform(0.5, 3).unwrap().total(), 1.5);
    }
}
