//! Named graph families: `k2`, `digon`, `triangle`, `path:<n>`,
//! `cycle:<n>`, `k4`, `ladder:<n>`.

use alloc::string::ToString;
use alloc::vec::Vec;

use super::Multigraph;
use crate::error::{Error, Result};

impl Multigraph {
    pub fn k2() -> Self {
        Multigraph { vertex_count: 2, edges: alloc::vec![(0, 1)] }
    }

    pub fn digon() -> Self {
        Multigraph { vertex_count: 2, edges: alloc::vec![(0, 1), (0, 1)] }
    }

    pub fn triangle() -> Self {
        Multigraph { vertex_count: 3, edges: alloc::vec![(0, 1), (1, 2), (2, 0)] }
    }

    pub fn k4() -> Self {
        let mut edges = Vec::new();
        for a in 0..4 {
            for b in a + 1..4 {
                edges.push((a, b));
            }
        }
        Multigraph { vertex_count: 4, edges }
    }

    /// Path on `n ≥ 1` vertices `0 – 1 – … – (n−1)`.
    pub fn path(n: usize) -> Result<Self> {
        Multigraph::new(n, (1..n).map(|i| (i - 1, i)))
    }

    /// Cycle on `n ≥ 1` vertices; `cycle:1` is a loop and `cycle:2` a digon.
    pub fn cycle(n: usize) -> Result<Self> {
        Multigraph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// `2 × n` ladder: top rail `0..n`, bottom rail `n..2n`, rungs `(i, n+i)`.
    pub fn ladder(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoVertices);
        }
        let mut edges = Vec::new();
        for i in 1..n {
            edges.push((i - 1, i));
        }
        for i in 1..n {
            edges.push((n + i - 1, n + i));
        }
        for i in 0..n {
            edges.push((i, n + i));
        }
        Multigraph::new(2 * n, edges)
    }

    /// Resolves a built-in name such as `cycle:5`.
    pub fn builtin(name: &str) -> Result<Self> {
        let bad = || Error::GraphSpec(name.to_string());
        let (family, arg) = match name.split_once(':') {
            Some((f, a)) => (f.trim(), Some(a.trim())),
            None => (name.trim(), None),
        };
        let size = || -> Result<usize> {
            arg.ok_or_else(bad)?.parse::<usize>().map_err(|_| bad())
        };
        let g = match (family, arg) {
            ("k2", None) => Multigraph::k2(),
            ("digon", None) => Multigraph::digon(),
            ("triangle", None) => Multigraph::triangle(),
            ("k4", None) => Multigraph::k4(),
            ("path", Some(_)) => Multigraph::path(size()?)?,
            ("cycle", Some(_)) => Multigraph::cycle(size()?)?,
            ("ladder", Some(_)) => Multigraph::ladder(size()?)?,
            _ => return Err(bad()),
        };
        Ok(g)
    }
}

/// Names accepted by [`Multigraph::builtin`], for help texts.
pub const BUILTIN_FAMILIES: &str = "k2, digon, triangle, k4, path:<n>, cycle:<n>, ladder:<n>";
