//! Multigraphs with parallel edges and loops.
//!
//! Edge identity is positional: edge `i` is the `i`-th `(tail, head)` pair,
//! and that pair also fixes the orientation used when counting flows.
//! Nothing observable depends on the orientation (see the flow tests).

mod builtin;
pub use builtin::BUILTIN_FAMILIES;
mod multiplicity;
pub mod random;
mod vertex_set;

use alloc::vec;
use alloc::vec::Vec;

use crate::dsu::Dsu;
use crate::error::{Error, Result};

pub use multiplicity::Multiplicities;
pub use vertex_set::{SourceSet, VertexSet};

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl Multigraph {
    pub fn new<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        if vertex_count == 0 {
            return Err(Error::NoVertices);
        }
        let edges: Vec<_> = edges.into_iter().collect();
        for &(a, b) in &edges {
            for v in [a, b] {
                if v >= vertex_count {
                    return Err(Error::VertexOutOfRange { vertex: v, vertex_count });
                }
            }
        }
        Ok(Multigraph { vertex_count, edges })
    }

    pub fn edgeless(vertex_count: usize) -> Result<Self> {
        Self::new(vertex_count, [])
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|&(a, b)| a == b)
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.vertex_count {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, vertex_count: self.vertex_count })
        }
    }

    pub(crate) fn check_distinct_pair(&self, x: Vertex, y: Vertex) -> Result<()> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        if x == y {
            Err(Error::SameVertex)
        } else {
            Ok(())
        }
    }

    pub(crate) fn require_loopless(&self) -> Result<()> {
        if self.has_loops() {
            Err(Error::LoopsPresent)
        } else {
            Ok(())
        }
    }

    /// Degrees with loops counted twice.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    fn mask_of(&self, active: &[usize]) -> Result<Vec<bool>> {
        let mut on = vec![false; self.edges.len()];
        for &e in active {
            if e >= self.edges.len() {
                return Err(Error::EdgeOutOfRange { edge: e, edge_count: self.edges.len() });
            }
            on[e] = true;
        }
        Ok(on)
    }

    fn dsu_over<F: Fn(usize) -> bool>(&self, keep: F) -> Dsu {
        let mut dsu = Dsu::new(self.vertex_count);
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if keep(i) {
                dsu.union(a, b);
            }
        }
        dsu
    }

    /// Number of components of the spanning subgraph `(V, active)`.
    /// Isolated vertices count; repeated indices are harmless.
    pub fn component_count(&self, active: &[usize]) -> Result<usize> {
        let on = self.mask_of(active)?;
        Ok(self.dsu_over(|i| on[i]).sets())
    }

    /// Component count for the edge subset encoded as a bit mask
    /// (bit `i` = edge `i`). Edges beyond bit 63 are never active.
    pub fn component_count_mask(&self, mask: u64) -> usize {
        self.dsu_over(|i| i < 64 && mask >> i & 1 == 1).sets()
    }

    /// `(rank, corank) = (|V| − k, |active| − |V| + k)` for the spanning
    /// subgraph on `active`.
    pub fn rank_corank(&self, active: &[usize]) -> Result<(usize, usize)> {
        let on = self.mask_of(active)?;
        let size = on.iter().filter(|&&b| b).count();
        let k = self.dsu_over(|i| on[i]).sets();
        Ok((self.vertex_count - k, size + k - self.vertex_count))
    }

    /// `G_m`: edge `e` replaced by `m(e)` parallel copies with the same
    /// orientation, copies of edge 0 first.
    pub fn expand(&self, m: &Multiplicities) -> Result<Multigraph> {
        m.check_len(self.edges.len())?;
        let mut edges = Vec::with_capacity(m.total() as usize);
        for (&e, &k) in self.edges.iter().zip(m.as_slice()) {
            edges.extend(core::iter::repeat_n(e, k as usize));
        }
        Ok(Multigraph { vertex_count: self.vertex_count, edges })
    }

    /// `G^{x,y}`: one extra edge `(x, y)` appended last, even when `x` and
    /// `y` are already adjacent.
    pub fn add_pair_edge(&self, x: Vertex, y: Vertex) -> Result<Multigraph> {
        self.check_distinct_pair(x, y)?;
        let mut g = self.clone();
        g.edges.push((x, y));
        Ok(g)
    }

    pub fn is_even(&self) -> bool {
        self.degrees().iter().all(|d| d % 2 == 0)
    }

    /// Vertices whose incident multiplicity sum is odd. A loop contributes
    /// `2·m(e)` to its vertex.
    pub fn source_set(&self, m: &Multiplicities) -> Result<SourceSet> {
        m.check_len(self.edges.len())?;
        let mut odd = vec![false; self.vertex_count];
        for (&(a, b), &k) in self.edges.iter().zip(m.as_slice()) {
            if a != b && k % 2 == 1 {
                odd[a] = !odd[a];
                odd[b] = !odd[b];
            }
        }
        Ok(SourceSet::from_parity(&odd))
    }

    /// Whether `x` and `y` lie in the same component of `G_m`.
    pub fn connected_in(&self, m: &Multiplicities, x: Vertex, y: Vertex) -> Result<bool> {
        m.check_len(self.edges.len())?;
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        let counts = m.as_slice();
        Ok(self.dsu_over(|i| counts[i] > 0).same(x, y))
    }

    /// Whether `x` and `y` are joined by edges from `mask`.
    pub fn connected_by_mask(&self, mask: u64, x: Vertex, y: Vertex) -> bool {
        self.dsu_over(|i| i < 64 && mask >> i & 1 == 1).same(x, y)
    }

    /// Spanning subgraph on the edges in `mask`, edge order preserved.
    pub fn spanning_subgraph(&self, mask: u64) -> Multigraph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| *i < 64 && mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Multigraph { vertex_count: self.vertex_count, edges }
    }

    /// The same graph with the edges selected by `flip` reversed.
    pub fn reoriented(&self, flip: &[bool]) -> Result<Multigraph> {
        if flip.len() != self.edges.len() {
            return Err(Error::LengthMismatch { expected: self.edges.len(), found: flip.len() });
        }
        let edges = self
            .edges
            .iter()
            .zip(flip)
            .map(|(&(a, b), &f)| if f { (b, a) } else { (a, b) })
            .collect();
        Ok(Multigraph { vertex_count: self.vertex_count, edges })
    }

    /// Breadth-first distances from `source`; `None` when unreachable.
    pub fn distances_from(&self, source: Vertex) -> Result<Vec<Option<usize>>> {
        self.check_vertex(source)?;
        let adj = self.adjacency();
        let mut dist = vec![None; self.vertex_count];
        dist[source] = Some(0);
        let mut queue = alloc::collections::VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap_or(0);
            for &w in &adj[v] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    fn adjacency(&self) -> Vec<Vec<Vertex>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(a, b) in &self.edges {
            if a != b {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        adj
    }

    /// Whether `w` separates `x` from `z`: neither endpoint lies in `w` and
    /// every `x`–`z` path meets `w`.
    pub fn separates(&self, x: Vertex, z: Vertex, w: &VertexSet) -> Result<bool> {
        self.check_distinct_pair(x, z)?;
        for v in w.iter() {
            self.check_vertex(v)?;
        }
        if w.contains(x) || w.contains(z) {
            return Ok(false);
        }
        let mut dsu = Dsu::new(self.vertex_count);
        for &(a, b) in &self.edges {
            if !w.contains(a) && !w.contains(b) {
                dsu.union(a, b);
            }
        }
        Ok(!dsu.same(x, z))
    }

    pub fn is_connected(&self) -> bool {
        self.dsu_over(|_| true).sets() == 1
    }
}
