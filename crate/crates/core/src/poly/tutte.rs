//! Tutte polynomial in the normalization `T_G(u, v) = (u−1)^{|V|−1}
//! W_G((u−1)^{−1}, v−1)`.
//!
//! On a graph with `k` components this is `(u−1)^{k−1}` times the usual
//! recursive Tutte polynomial, which is what keeps
//! `C_G(q) = (−1)^{|E|−|V|+1} T_G(0, 1−q)` true for disconnected graphs.

use alloc::collections::BTreeMap;

use num_traits::{One, Zero};

use super::reduced::{Key, Reduced};
use super::{whitney_eval, ExactScalar};
use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::limits::Limits;

/// Evaluates through the Whitney function when `u ≠ 1` and by
/// deletion–contraction at `u = 1`.
pub fn tutte_eval(g: &Multigraph, u: &ExactScalar, v: &ExactScalar, limits: &Limits) -> Result<ExactScalar> {
    if u.is_one() {
        Ok(tutte_eval_dc(g, u, v))
    } else {
        tutte_eval_whitney(g, u, v, limits)
    }
}

/// `(u−1)^{|V|−1} W_G((u−1)^{−1}, v−1)`; undefined at `u = 1`.
pub fn tutte_eval_whitney(g: &Multigraph, u: &ExactScalar, v: &ExactScalar, limits: &Limits) -> Result<ExactScalar> {
    let shift = u - ExactScalar::one();
    if shift.is_zero() {
        return Err(Error::invalid("the Whitney route divides by u − 1"));
    }
    let w = whitney_eval(g, &shift.recip(), &(v - ExactScalar::one()), limits)?;
    Ok(num_traits::pow(shift, g.vertex_count() - 1) * w)
}

struct TutteDc<'a> {
    u: &'a ExactScalar,
    v: &'a ExactScalar,
    memo: BTreeMap<Key, ExactScalar>,
}

impl TutteDc<'_> {
    /// Standard recursion: loop ↦ `v·T(G∖e)`, bridge ↦ `u·T(G/e)`,
    /// otherwise `T(G∖e) + T(G/e)`.
    fn eval(&mut self, mut r: Reduced) -> ExactScalar {
        let loops = r.strip_loops() as usize;
        let vf = num_traits::pow(self.v.clone(), loops);
        if r.is_empty() {
            return vf;
        }
        let key = r.canonicalize();
        if let Some(t) = self.memo.get(&key) {
            return vf * t;
        }
        let t = if let Some(e) = r.pendant_edge() {
            self.u * self.eval(r.contracted(e))
        } else if r.is_bridge(0) {
            self.u * self.eval(r.contracted(0))
        } else {
            self.eval(r.deleted(0)) + self.eval(r.contracted(0))
        };
        let out = &vf * &t;
        self.memo.insert(key, t);
        out
    }
}

/// Deletion–contraction route, defined at every `(u, v)`.
pub fn tutte_eval_dc(g: &Multigraph, u: &ExactScalar, v: &ExactScalar) -> ExactScalar {
    let mut dc = TutteDc { u, v, memo: BTreeMap::new() };
    let r = Reduced::from_graph(g);
    // Components of G including isolated vertices.
    let isolated = g.degrees().iter().filter(|&&d| d == 0).count();
    let k = r.components() + isolated;
    let standard = dc.eval(r);
    num_traits::pow(u - ExactScalar::one(), k - 1) * standard
}
