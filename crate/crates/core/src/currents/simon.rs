use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Multigraph, Vertex, VertexSet};
use crate::limits::Limits;
use crate::poisson::IntensityVector;
use crate::potts::{potts_sigma_matrix, rc_connection_matrix, PottsParams};

/// `σ(x,z)` against `Σ_{y∈W} σ(x,y) σ(y,z)`; `margin = rhs − lhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimonCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
}

impl SimonCheck {
    fn new(lhs: f64, rhs: f64) -> Self {
        SimonCheck { lhs, rhs, margin: rhs - lhs }
    }
}

fn require_separation(g: &Multigraph, x: Vertex, z: Vertex, w: &VertexSet) -> Result<()> {
    g.check_distinct_pair(x, z)?;
    if g.separates(x, z, w)? {
        Ok(())
    } else {
        Err(Error::NotSeparating)
    }
}

fn simon_sides(m: &[Vec<f64>], x: Vertex, z: Vertex, w: &VertexSet) -> SimonCheck {
    SimonCheck::new(m[x][z], w.iter().map(|y| m[x][y] * m[y][z]).sum())
}

/// The Simon inequality for the Ising model, both sides by spin enumeration.
pub fn simon_check(
    g: &Multigraph,
    lambda: &IntensityVector,
    x: Vertex,
    z: Vertex,
    w: &VertexSet,
    limits: &Limits,
) -> Result<SimonCheck> {
    require_separation(g, x, z, w)?;
    let params = PottsParams::from_intensities(2, lambda.as_slice().to_vec())?;
    Ok(simon_sides(&potts_sigma_matrix(g, &params, limits)?, x, z, w))
}

/// One grid point of [`rc_simon_scan`].
#[derive(Debug, Clone, PartialEq)]
pub struct SimonPoint {
    pub q: f64,
    pub check: SimonCheck,
}

/// The random-cluster form `φ(x↔z) ≤ Σ_{y∈W} φ(x↔y) φ(y↔z)` over a grid of
/// `q ∈ [1, 2]`. Only `q = 1` and `q = 2` are theorems; other points are
/// reported as found, negative margins included.
pub fn rc_simon_scan(
    g: &Multigraph,
    p: f64,
    q_grid: &[f64],
    x: Vertex,
    z: Vertex,
    w: &VertexSet,
    limits: &Limits,
) -> Result<Vec<SimonPoint>> {
    require_separation(g, x, z, w)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid("p must lie in [0, 1]"));
    }
    let probs = alloc::vec![p; g.edge_count()];
    q_grid
        .iter()
        .map(|&q| {
            if !(1.0..=2.0).contains(&q) {
                return Err(Error::invalid("scan points must lie in [1, 2]"));
            }
            let m = rc_connection_matrix(g, &probs, &q, limits)?;
            Ok(SimonPoint { q, check: simon_sides(&m, x, z, w) })
        })
        .collect()
}
