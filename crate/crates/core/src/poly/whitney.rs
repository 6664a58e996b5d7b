use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::ExactScalar;
use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::limits::Limits;

/// Number of edge subsets with each `(rank, corank)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankTable {
    /// `counts[r][c]`
    counts: Vec<Vec<u64>>,
}

impl RankTable {
    pub fn count(&self, rank: usize, corank: usize) -> u64 {
        self.counts.get(rank).and_then(|row| row.get(corank)).copied().unwrap_or(0)
    }

    /// Non-zero `(rank, corank, count)` entries.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.counts.iter().enumerate().flat_map(|(r, row)| {
            row.iter().enumerate().filter(|(_, &n)| n > 0).map(move |(c, &n)| (r, c, n))
        })
    }

    pub fn total(&self) -> u64 {
        self.entries().map(|(_, _, n)| n).sum()
    }
}

pub fn rank_corank_table(g: &Multigraph, limits: &Limits) -> Result<RankTable> {
    limits.check_subsets(g.edge_count())?;
    let n = g.vertex_count();
    let e = g.edge_count();
    let mut counts = vec![vec![0u64; e + 1]; n];
    for mask in 0..1u64 << e {
        let k = g.component_count_mask(mask);
        let size = mask.count_ones() as usize;
        counts[n - k][size + k - n] += 1;
    }
    Ok(RankTable { counts })
}

fn powers(x: &ExactScalar, up_to: usize) -> Vec<ExactScalar> {
    let mut out = Vec::with_capacity(up_to + 1);
    out.push(ExactScalar::one());
    for i in 0..up_to {
        out.push(&out[i] * x);
    }
    out
}

/// `W_G(u, v) = Σ_{E′ ⊆ E} u^{r(E′)} v^{c(E′)}` with `0^0 = 1`.
pub fn whitney_eval(g: &Multigraph, u: &ExactScalar, v: &ExactScalar, limits: &Limits) -> Result<ExactScalar> {
    let table = rank_corank_table(g, limits)?;
    let up = powers(u, g.vertex_count());
    let vp = powers(v, g.edge_count());
    Ok(table
        .entries()
        .fold(ExactScalar::zero(), |acc, (r, c, n)| acc + &up[r] * &vp[c] * ExactScalar::from_integer(n.into())))
}

pub fn whitney_eval_f64(g: &Multigraph, u: f64, v: f64, limits: &Limits) -> Result<f64> {
    let table = rank_corank_table(g, limits)?;
    Ok(table
        .entries()
        .map(|(r, c, n)| n as f64 * crate::math::powi(u, r as u32) * crate::math::powi(v, c as u32))
        .sum())
}

/// The same function through `(u/v)^{|V|} Σ v^{|E′|} (v/u)^{k(E′)}`,
/// tabulating subsets by size and component count instead of by rank.
/// Needs `u, v ≠ 0`.
pub fn whitney_eval_alt(g: &Multigraph, u: &ExactScalar, v: &ExactScalar, limits: &Limits) -> Result<ExactScalar> {
    if u.is_zero() || v.is_zero() {
        return Err(Error::invalid("the size/component form needs u and v non-zero"));
    }
    limits.check_subsets(g.edge_count())?;
    let n = g.vertex_count();
    let e = g.edge_count();
    // by_size[|E′|][k]
    let mut by_size = vec![vec![0u64; n + 1]; e + 1];
    for mask in 0..1u64 << e {
        by_size[mask.count_ones() as usize][g.component_count_mask(mask)] += 1;
    }
    let vp = powers(v, e);
    let ratio = v / u;
    let rp = powers(&ratio, n);
    let mut sum = ExactScalar::zero();
    for (size, row) in by_size.iter().enumerate() {
        for (k, &count) in row.iter().enumerate().filter(|(_, &c)| c > 0) {
            sum += &vp[size] * &rp[k] * ExactScalar::from_integer(count.into());
        }
    }
    let lead = powers(&(u / v), n).pop().unwrap_or_else(ExactScalar::one);
    Ok(lead * sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{exact, ratio};

    #[test]
    fn k2_is_one_plus_u() {
        let l = Limits::default();
        let k2 = Multigraph::k2();
        for u in [exact(0), exact(3), ratio(-2, 7)] {
            assert_eq!(whitney_eval(&k2, &u, &exact(5), &l).unwrap(), exact(1) + &u);
        }
    }

    #[test]
    fn at_one_one_counts_subsets() {
        let l = Limits::default();
        for g in [Multigraph::triangle(), Multigraph::k4(), Multigraph::digon()] {
            let w = whitney_eval(&g, &exact(1), &exact(1), &l).unwrap();
            assert_eq!(w, exact(1 << g.edge_count()));
        }
    }

    #[test]
    fn triangle_flow_point() {
        // (−1)^3 W(−1, −3) = C_triangle(3) = 2
        let w = whitney_eval(&Multigraph::triangle(), &exact(-1), &exact(-3), &Limits::default()).unwrap();
        assert_eq!(w, exact(-2));
    }

    #[test]
    fn zero_to_zero_is_one() {
        // Only the empty subset has rank 0 and corank 0 on K2.
        let w = whitney_eval(&Multigraph::k2(), &exact(0), &exact(0), &Limits::default()).unwrap();
        assert_eq!(w, exact(1));
    }

    #[test]
    fn alternative_form_matches() {
        let l = Limits::default();
        for g in [Multigraph::triangle(), Multigraph::k4(), Multigraph::new(3, [(0, 0), (0, 1), (0, 1)]).unwrap()] {
            for (u, v) in [(ratio(1, 2), ratio(3, 5)), (exact(-1), exact(-4)), (ratio(-7, 3), exact(2))] {
                assert_eq!(whitney_eval(&g, &u, &v, &l).unwrap(), whitney_eval_alt(&g, &u, &v, &l).unwrap());
            }
        }
        assert!(whitney_eval_alt(&Multigraph::k2(), &exact(0), &exact(1), &l).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let l = Limits { subset_edges: 2, ..Limits::default() };
        assert!(matches!(
            whitney_eval(&Multigraph::triangle(), &exact(1), &exact(1), &l),
            Err(Error::CapExceeded { .. })
        ));
    }
}
