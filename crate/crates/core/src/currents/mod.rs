//! The `q = 2` random-current toolkit.
//!
//! Reducing each Poisson multiplicity modulo 2 turns a Poisson multigraph
//! into a Bernoulli edge subset with density `p′ = (1 − e^{−2λ})/2`, so
//! source-set probabilities reduce to finite sums. On top of that sit the
//! switching lemma, the products-of-correlations lemma and the Simon
//! inequality.

mod appls;
mod bernoulli;
mod labelling;
mod simon;
mod switching;

pub use appls::{appls_identity_i, appls_identity_ii, ApplsCheck};
pub use bernoulli::{bernoulli_density, sigma_source_ratio, source_distribution, source_prob};
pub use labelling::{CurrentLabelling, SourceLaw};
pub use simon::{rc_simon_scan, simon_check, SimonCheck, SimonPoint};
pub use switching::{
    switching_check_fixed, switching_check_poisson, SwitchingCounts, SwitchingPoissonCheck, SwitchingTable,
};
