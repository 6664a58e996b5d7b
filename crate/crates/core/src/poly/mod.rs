//! Whitney rank-generating function, Tutte polynomial and flow polynomial.
//!
//! Everything in this module is exact: integers are [`BigInt`] and
//! evaluation points are [`ExactScalar`] rationals.
//!
//! Flow counts have three independent routes that the tests play against
//! each other:
//!
//! * [`count_flows_enum`] brute force over all non-zero assignments,
//! * [`count_flows_dc`] deletion–contraction on a canonicalized multigraph,
//! * [`count_flows_whitney`] `(−1)^{|E|} W(−1, −q)` by subset enumeration.
//!
//! [`BigInt`]: num_bigint::BigInt

mod flows;
mod polynomial;
mod reduced;
mod tutte;
mod whitney;

pub use flows::{count_flows_dc, count_flows_enum, count_flows_whitney, even_flow_indicator, FlowCounter};
pub use polynomial::{flow_polynomial, IntPolynomial};
pub use tutte::{tutte_eval, tutte_eval_dc, tutte_eval_whitney};
pub use whitney::{rank_corank_table, whitney_eval, whitney_eval_alt, whitney_eval_f64, RankTable};

/// Exact evaluation values.
pub type ExactScalar = num_rational::BigRational;

/// `n` as an exact scalar.
pub fn exact(n: i64) -> ExactScalar {
    ExactScalar::from_integer(n.into())
}

/// `num / den` as an exact scalar. Panics when `den == 0`.
pub fn ratio(num: i64, den: i64) -> ExactScalar {
    ExactScalar::new(num.into(), den.into())
}
