//! Potts and random-cluster measures on small loopless graphs, by exhaustive
//! enumeration.
//!
//! Two numeric modes exist. Float mode takes couplings and evaluates
//! `exp`. Exact mode takes the per-edge probabilities `p_e = 1 − e^{−λ_e q}`
//! as rationals, in which the Potts weights are rational as well: an edge
//! with equal end spins carries the relative weight `1/(1 − p_e)`.

mod identities;
mod rc;
mod spin;

use alloc::vec::Vec;

use crate::error::{Error, Result};

pub use identities::{
    verify_corrconn, verify_corrconn_exact, verify_rc_whitney, verify_rc_whitney_f64, CorrConnReport,
};
pub use rc::{rc_connection, rc_connection_matrix, rc_partition, rc_prob, rc_q_moment, RCConfig};
pub use spin::{
    potts_partition, potts_partition_exact, potts_sigma, potts_sigma_exact, potts_sigma_matrix, spin_configs,
    SpinConfig,
};

/// Potts parameters: `q` states, inverse temperature `β` and per-edge
/// couplings `J_e ≥ 0`. The identities only see `λ_e = β J_e`.
#[derive(Debug, Clone, PartialEq)]
pub struct PottsParams {
    q: u32,
    beta: f64,
    couplings: Vec<f64>,
}

impl PottsParams {
    pub fn new(q: u32, beta: f64, couplings: Vec<f64>) -> Result<Self> {
        if q < 2 {
            return Err(Error::invalid("q must be at least 2"));
        }
        if !(beta.is_finite() && beta >= 0.0) {
            return Err(Error::invalid("beta must be finite and non-negative"));
        }
        if couplings.iter().any(|j| !(j.is_finite() && *j >= 0.0)) {
            return Err(Error::invalid("couplings must be finite and non-negative"));
        }
        Ok(PottsParams { q, beta, couplings })
    }

    /// `β = 1`, `J = λ`.
    pub fn from_intensities(q: u32, lambda: Vec<f64>) -> Result<Self> {
        Self::new(q, 1.0, lambda)
    }

    /// The same `λ` on each of `edges` edges.
    pub fn uniform(q: u32, lambda: f64, edges: usize) -> Result<Self> {
        Self::new(q, 1.0, alloc::vec![lambda; edges])
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn couplings(&self) -> &[f64] {
        &self.couplings
    }

    /// `λ_e = β J_e`.
    pub fn intensities(&self) -> Vec<f64> {
        self.couplings.iter().map(|j| self.beta * j).collect()
    }

    pub(crate) fn check_edges(&self, edges: usize) -> Result<()> {
        if self.couplings.len() == edges {
            Ok(())
        } else {
            Err(Error::LengthMismatch { expected: edges, found: self.couplings.len() })
        }
    }
}

/// `p_e = 1 − e^{−β J_e q}`, the random-cluster edge probability matching
/// the Potts couplings.
pub fn edge_prob(params: &PottsParams) -> Vec<f64> {
    let q = params.q as f64;
    params.intensities().iter().map(|l| -crate::math::expm1(-l * q)).collect()
}
