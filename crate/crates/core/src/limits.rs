//! Enumeration caps.
//!
//! Every exhaustive routine checks its configuration count against one of
//! these before starting, and fails with [`Error::CapExceeded`] rather than
//! running for hours.
//!
//! [`Error::CapExceeded`]: crate::Error::CapExceeded

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Limits {
    /// Maximum edge count for subset enumeration (Whitney sums).
    pub subset_edges: usize,
    /// Maximum number of flow assignments `q^|E|` for brute-force counting.
    pub flow_assignments: u128,
    /// Maximum number of spin configurations `q^|V|`.
    pub spin_configs: u128,
    /// Maximum number of random-cluster configurations `2^|E|`.
    pub rc_configs: u128,
    /// Hard cap on the edge count of one sampled Poisson multigraph.
    pub sample_edges: usize,
    /// Maximum number of sub-multisets `2^{Σm}` in switching enumerations.
    pub switching_subsets: u128,
    /// Maximum number of multiplicity vectors `(M+1)^|E|` enumerated directly.
    pub multiplicity_vectors: u128,
    /// Largest truncation level the adaptive search may pick.
    pub max_truncation: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            subset_edges: 20,
            flow_assignments: 10_000_000,
            spin_configs: 10_000_000,
            rc_configs: 1_000_000,
            sample_edges: 64,
            switching_subsets: 1 << 24,
            multiplicity_vectors: 10_000_000,
            max_truncation: 400,
        }
    }
}

/// `base^exp` saturating at `u128::MAX`.
pub(crate) fn saturating_pow(base: u128, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
        if acc == u128::MAX {
            break;
        }
    }
    acc
}

pub(crate) fn check(what: &'static str, required: u128, cap: u128) -> Result<()> {
    if required > cap {
        Err(Error::CapExceeded { what, required, cap })
    } else {
        Ok(())
    }
}

impl Limits {
    pub(crate) fn check_subsets(&self, edges: usize) -> Result<()> {
        // Masks are u64, so 63 is a hard ceiling regardless of configuration.
        check(
            "edge subsets",
            saturating_pow(2, edges),
            saturating_pow(2, self.subset_edges.min(63)),
        )
    }

    pub(crate) fn check_rc(&self, edges: usize) -> Result<()> {
        check("random-cluster configurations", saturating_pow(2, edges), self.rc_configs.min(1 << 63))
    }

    pub(crate) fn check_spins(&self, q: u32, vertices: usize) -> Result<()> {
        check("spin configurations", saturating_pow(q as u128, vertices), self.spin_configs)
    }
}
