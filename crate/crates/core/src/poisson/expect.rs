use num_traits::{Signed, Zero};

use super::series::{flow_series_enum, flow_series_sum, flow_tail_scaled, to_exact, to_f64};
use super::IntensityVector;
use crate::error::{Error, Result};
use crate::graph::{Multigraph, Vertex};
use crate::limits::Limits;
use crate::math::exp;
use crate::poly::ExactScalar;

/// How far to truncate each multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Truncation {
    /// A fixed level `M`.
    Level(u32),
    /// The smallest `M` whose certified bound is at most this.
    Target(f64),
}

impl From<u32> for Truncation {
    fn from(m: u32) -> Self {
        Truncation::Level(m)
    }
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation::Target(1e-10)
    }
}

/// `𝔼_λ(C(G_P; q))` truncated at level `M`.
///
/// `series` is the exact truncated sum without the factor `e^{−Σλ}`, and
/// `value = e^{log_prefactor} · series`. Since flow counts are non-negative
/// the true expectation lies in `[value, value + tail_bound]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedExpectation {
    pub value: f64,
    pub series: ExactScalar,
    pub log_prefactor: f64,
    pub tail_bound: f64,
    pub truncation_level: u32,
}

/// A ratio of two truncated expectations with a certified enclosure of the
/// untruncated ratio.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioBound {
    /// Ratio of the two truncated sums.
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
    /// `max(value − lower, upper − value)`; infinite when not certified.
    pub bound: f64,
    pub truncation_level: u32,
    /// False when the denominator enclosure reaches zero.
    pub certified: bool,
}

impl RatioBound {
    pub fn contains(&self, x: f64, slack: f64) -> bool {
        self.certified && x >= self.lower - slack && x <= self.upper + slack
    }
}

pub(crate) fn choose_level(limits: &Limits, target: f64, tail: impl Fn(u32) -> f64) -> Result<u32> {
    if !(target > 0.0) {
        return Err(Error::invalid("truncation target must be positive"));
    }
    (0..=limits.max_truncation).find(|&m| tail(m) <= target).ok_or(Error::CapExceeded {
        what: "truncation level",
        required: limits.max_truncation as u128 + 1,
        cap: limits.max_truncation as u128,
    })
}

fn check_flow_args(g: &Multigraph, lambda: &IntensityVector, q: u32) -> Result<()> {
    lambda.check_len(g.edge_count())?;
    if q < 2 {
        return Err(Error::invalid("q must be at least 2"));
    }
    Ok(())
}

fn expectation(
    g: &Multigraph,
    lambda: &IntensityVector,
    q: u32,
    pinned: Option<(Vertex, Vertex)>,
    truncation: Truncation,
    limits: &Limits,
) -> Result<TruncatedExpectation> {
    check_flow_args(g, lambda, q)?;
    let log_prefactor = -lambda.total();
    let tail = |m| flow_tail_scaled(lambda, q, pinned.is_some(), m) * exp(log_prefactor);
    let m = match truncation {
        Truncation::Level(m) => m,
        Truncation::Target(t) => choose_level(limits, t, tail)?,
    };
    let series = flow_series_sum(g, lambda, q, pinned, m, limits)?;
    Ok(TruncatedExpectation {
        value: to_f64(&series) * exp(log_prefactor),
        series,
        log_prefactor,
        tail_bound: tail(m),
        truncation_level: m,
    })
}

/// `𝔼_λ(C(G_P; q))` truncated at every `P(e) ≤ M`, with a certified tail.
pub fn exact_expect_flow(
    g: &Multigraph,
    lambda: &IntensityVector,
    q: u32,
    truncation: impl Into<Truncation>,
    limits: &Limits,
) -> Result<TruncatedExpectation> {
    expectation(g, lambda, q, None, truncation.into(), limits)
}

/// `𝔼_λ(C(G_P^{x,y}; q))`, where `G_P^{x,y}` is `G_P` plus one `(x, y)` edge.
pub fn exact_expect_flow_pair(
    g: &Multigraph,
    lambda: &IntensityVector,
    q: u32,
    x: Vertex,
    y: Vertex,
    truncation: impl Into<Truncation>,
    limits: &Limits,
) -> Result<TruncatedExpectation> {
    g.check_distinct_pair(x, y)?;
    expectation(g, lambda, q, Some((x, y)), truncation.into(), limits)
}

/// [`exact_expect_flow`] at a fixed level by literal enumeration of all
/// `(M+1)^{|E|}` multiplicity vectors. Slow; kept as an oracle.
pub fn exact_expect_flow_enum(
    g: &Multigraph,
    lambda: &IntensityVector,
    q: u32,
    m: u32,
    limits: &Limits,
) -> Result<TruncatedExpectation> {
    check_flow_args(g, lambda, q)?;
    let log_prefactor = -lambda.total();
    let series = flow_series_enum(g, lambda, q, None, m, limits)?;
    Ok(TruncatedExpectation {
        value: to_f64(&series) * exp(log_prefactor),
        series,
        log_prefactor,
        tail_bound: flow_tail_scaled(lambda, q, false, m) * exp(log_prefactor),
        truncation_level: m,
    })
}

/// Truncated numerator and denominator sums (same scale) with their tails.
pub(crate) struct RatioParts {
    pub num: ExactScalar,
    pub den: ExactScalar,
    pub num_tail: f64,
    pub den_tail: f64,
    /// Truncated sums of non-negative terms only err upwards.
    pub one_sided: bool,
    pub level: u32,
}

impl RatioParts {
    pub(crate) fn finish(&self) -> RatioBound {
        let value = to_f64(&(&self.num / &self.den));
        let tn = to_exact(self.num_tail);
        let td = to_exact(self.den_tail);
        let (n_lo, d_lo) = if self.one_sided {
            (self.num.clone(), self.den.clone())
        } else {
            (&self.num - &tn, &self.den - &td)
        };
        let (n_hi, d_hi) = (&self.num + tn, &self.den + td);
        if !d_lo.is_positive() {
            return RatioBound {
                value,
                lower: f64::NEG_INFINITY,
                upper: f64::INFINITY,
                bound: f64::INFINITY,
                truncation_level: self.level,
                certified: false,
            };
        }
        let corners = [&n_lo / &d_lo, &n_lo / &d_hi, &n_hi / &d_lo, &n_hi / &d_hi];
        let lo = corners.iter().min().unwrap();
        let hi = corners.iter().max().unwrap();
        let centre = &self.num / &self.den;
        let spread = core::cmp::max((&centre - lo).abs(), (hi - &centre).abs());
        RatioBound {
            value,
            lower: to_f64(lo),
            upper: to_f64(hi),
            // Round the enclosure outwards past the f64 conversion.
            bound: to_f64(&spread) * (1.0 + 1e-12) + f64::EPSILON * value.abs(),
            truncation_level: self.level,
            certified: true,
        }
    }
}

/// Raises `M` until the certified ratio bound meets `target` or the cap is
/// reached; the last evaluation is returned either way.
pub(crate) fn adapt_ratio(
    limits: &Limits,
    target: f64,
    tails: impl Fn(u32) -> (f64, f64),
    mut eval: impl FnMut(u32) -> Result<RatioParts>,
) -> Result<RatioParts> {
    let max = limits.max_truncation;
    let first = choose_level(limits, target, |m| {
        let (a, b) = tails(m);
        a + b
    })
    .unwrap_or(max);
    let mut parts = eval(first)?;
    for _ in 0..6 {
        let b = parts.finish();
        if b.certified && b.bound <= target {
            break;
        }
        let den = to_f64(&parts.den).abs().max(f64::MIN_POSITIVE);
        let r = to_f64(&(&parts.num / &parts.den)).abs();
        let next = (parts.level + 1..=max).find(|&m| {
            let (tn, td) = tails(m);
            (tn + (r + 1.0) * td) / (den - td).max(0.0) <= target / 2.0
        });
        match next {
            Some(m) => parts = eval(m)?,
            None if parts.level < max => parts = eval(max)?,
            None => break,
        }
    }
    Ok(parts)
}

/// `σ(x, y) = 𝔼_λ(C(G_P^{x,y}; q)) / 𝔼_λ(C(G_P; q))`, exact up to truncation,
/// with a certified enclosure.
pub fn sigma_flow_ratio_exact(
    g: &Multigraph,
    lambda: &IntensityVector,
    q: u32,
    x: Vertex,
    y: Vertex,
    truncation: impl Into<Truncation>,
    limits: &Limits,
) -> Result<RatioBound> {
    g.require_loopless()?;
    g.check_distinct_pair(x, y)?;
    check_flow_args(g, lambda, q)?;
    let eval = |m| -> Result<RatioParts> {
        Ok(RatioParts {
            num: flow_series_sum(g, lambda, q, Some((x, y)), m, limits)?,
            den: flow_series_sum(g, lambda, q, None, m, limits)?,
            num_tail: flow_tail_scaled(lambda, q, true, m),
            den_tail: flow_tail_scaled(lambda, q, false, m),
            one_sided: true,
            level: m,
        })
    };
    let parts = match truncation.into() {
        Truncation::Level(m) => eval(m)?,
        Truncation::Target(t) => adapt_ratio(
            limits,
            t,
            |m| (flow_tail_scaled(lambda, q, true, m), flow_tail_scaled(lambda, q, false, m)),
            eval,
        )?,
    };
    // The all-zero multiplicity vector alone contributes 1 to the scaled
    // denominator.
    if parts.den.is_zero() {
        return Err(Error::DegenerateDenominator);
    }
    Ok(parts.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::exact;
    use crate::potts::{potts_sigma, PottsParams};
    use libm::tanh;

    fn l() -> Limits {
        Limits::default()
    }

    #[test]
    fn zero_intensity() {
        let g = Multigraph::triangle();
        let lam = IntensityVector::uniform(0.0, 3).unwrap();
        let e = exact_expect_flow(&g, &lam, 3, 5, &l()).unwrap();
        assert_eq!((e.value, e.tail_bound, e.series), (1.0, 0.0, exact(1)));
        let s = sigma_flow_ratio_exact(&g, &lam, 3, 0, 1, Truncation::default(), &l()).unwrap();
        assert_eq!(s.value, 0.0);
    }

    #[test]
    fn k2_parity_series() {
        let lam = IntensityVector::uniform(0.5, 1).unwrap();
        let e = exact_expect_flow(&Multigraph::k2(), &lam, 2, 30, &l()).unwrap();
        assert!(e.tail_bound <= 1e-20);
        let want = (1.0 + libm::exp(-1.0)) / 2.0;
        assert!((e.value - want).abs() <= e.tail_bound + 4.0 * f64::EPSILON);
        let odd = exact_expect_flow_pair(&Multigraph::k2(), &lam, 2, 0, 1, 30, &l()).unwrap();
        assert!((odd.value - (1.0 - libm::exp(-1.0)) / 2.0).abs() <= odd.tail_bound + 4.0 * f64::EPSILON);
    }

    #[test]
    fn enum_oracle_agrees() {
        let g = Multigraph::triangle();
        let lam = IntensityVector::new(alloc::vec![0.3, 0.4, 0.3]).unwrap();
        let a = exact_expect_flow(&g, &lam, 3, 6, &l()).unwrap();
        let b = exact_expect_flow_enum(&g, &lam, 3, 6, &l()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn adaptive_meets_target() {
        let g = Multigraph::k4();
        let lam = IntensityVector::uniform(0.5, 6).unwrap();
        let e = exact_expect_flow(&g, &lam, 3, Truncation::Target(1e-12), &l()).unwrap();
        assert!(e.tail_bound <= 1e-12);
        let below = exact_expect_flow(&g, &lam, 3, e.truncation_level - 1, &l()).unwrap();
        assert!(below.tail_bound > 1e-12);
        let tight = Limits { max_truncation: 3, ..Limits::default() };
        assert!(exact_expect_flow(&g, &lam, 3, Truncation::Target(1e-12), &tight).unwrap_err().is_cap());
    }

    #[test]
    fn ratio_matches_spins() {
        let k2 = Multigraph::k2();
        let lam = IntensityVector::uniform(0.5, 1).unwrap();
        let s = sigma_flow_ratio_exact(&k2, &lam, 2, 0, 1, Truncation::default(), &l()).unwrap();
        assert!(s.certified && s.bound <= 1e-10);
        assert!(s.contains(tanh(0.5), 1e-15));

        let t = Multigraph::triangle();
        let lam = IntensityVector::uniform(0.4, 3).unwrap();
        let s = sigma_flow_ratio_exact(&t, &lam, 3, 0, 1, Truncation::default(), &l()).unwrap();
        let spin = potts_sigma(&t, &PottsParams::uniform(3, 0.4, 3).unwrap(), 0, 1, &l()).unwrap();
        assert!(s.bound <= 1e-10);
        assert!((s.value - spin).abs() <= s.bound + 1e-13, "{} vs {spin}", s.value);
    }

    #[test]
    fn ratio_errors() {
        let lam = IntensityVector::uniform(0.5, 2).unwrap();
        let looped = Multigraph::new(2, [(0, 1), (0, 0)]).unwrap();
        assert_eq!(sigma_flow_ratio_exact(&looped, &lam, 2, 0, 1, 5, &l()), Err(Error::LoopsPresent));
        let path = Multigraph::path(3).unwrap();
        assert_eq!(sigma_flow_ratio_exact(&path, &lam, 2, 1, 1, 5, &l()), Err(Error::SameVertex));
        assert!(exact_expect_flow(&path, &lam, 1, 5, &l()).is_err());
    }
}
