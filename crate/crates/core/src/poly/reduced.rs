//! Unlabelled working form of a multigraph for deletion–contraction.
//!
//! Only edges are stored, as normalized `(min, max)` pairs; vertices that
//! touch no edge are dropped since neither the flow count nor the standard
//! Tutte polynomial sees them. The canonical key relabels vertices by
//! decreasing degree and sorts the edge list. It is not an isomorphism
//! canon, but any relabelling describes the same graph, so the key is a
//! sound memo index.

use alloc::vec;
use alloc::vec::Vec;

use crate::dsu::Dsu;
use crate::graph::Multigraph;

pub(crate) type Key = Vec<(u32, u32)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Reduced {
    edges: Vec<(u32, u32)>,
}

impl Reduced {
    pub(crate) fn from_graph(g: &Multigraph) -> Self {
        Reduced {
            edges: g.edges().iter().map(|&(a, b)| (a.min(b) as u32, a.max(b) as u32)).collect(),
        }
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Removes every loop and returns how many there were.
    pub(crate) fn strip_loops(&mut self) -> u32 {
        let before = self.edges.len();
        self.edges.retain(|&(a, b)| a != b);
        (before - self.edges.len()) as u32
    }

    fn vertex_bound(&self) -> usize {
        self.edges.iter().map(|&(_, b)| b as usize + 1).max().unwrap_or(0)
    }

    fn degrees(&self) -> Vec<u32> {
        let mut deg = vec![0u32; self.vertex_bound()];
        for &(a, b) in &self.edges {
            deg[a as usize] += 1;
            deg[b as usize] += 1;
        }
        deg
    }

    /// Relabels vertices canonically (dropping isolated ones) and returns
    /// the memo key, which is also the new edge list.
    pub(crate) fn canonicalize(&mut self) -> Key {
        let deg = self.degrees();
        let mut order: Vec<u32> = (0..deg.len() as u32).filter(|&v| deg[v as usize] > 0).collect();
        order.sort_by(|&a, &b| deg[b as usize].cmp(&deg[a as usize]).then(a.cmp(&b)));
        let mut label = vec![u32::MAX; deg.len()];
        for (new, &old) in order.iter().enumerate() {
            label[old as usize] = new as u32;
        }
        for e in &mut self.edges {
            let (a, b) = (label[e.0 as usize], label[e.1 as usize]);
            *e = (a.min(b), a.max(b));
        }
        self.edges.sort_unstable();
        self.edges.clone()
    }

    /// A vertex of degree one, if any (its edge is a bridge).
    pub(crate) fn pendant_edge(&self) -> Option<usize> {
        let deg = self.degrees();
        self.edges
            .iter()
            .position(|&(a, b)| a != b && (deg[a as usize] == 1 || deg[b as usize] == 1))
    }

    /// Replaces a path `a – v – b` through a vertex `v` of degree two by a
    /// single edge `a – b` (a loop if `a = b`). Returns false when no such
    /// vertex exists. Loops must already be stripped.
    pub(crate) fn suppress_degree_two(&mut self) -> bool {
        let deg = self.degrees();
        let Some(v) = (0..deg.len()).find(|&v| deg[v] == 2) else {
            return false;
        };
        let v = v as u32;
        let mut ends = Vec::with_capacity(2);
        self.edges.retain(|&(a, b)| {
            if a == v || b == v {
                ends.push(if a == v { b } else { a });
                false
            } else {
                true
            }
        });
        let (a, b) = (ends[0], ends[1]);
        self.edges.push((a.min(b), a.max(b)));
        true
    }

    pub(crate) fn is_bridge(&self, e: usize) -> bool {
        let (a, b) = self.edges[e];
        if a == b {
            return false;
        }
        let mut dsu = Dsu::new(self.vertex_bound());
        for (i, &(x, y)) in self.edges.iter().enumerate() {
            if i != e {
                dsu.union(x as usize, y as usize);
            }
        }
        !dsu.same(a as usize, b as usize)
    }

    pub(crate) fn is_loop(&self, e: usize) -> bool {
        self.edges[e].0 == self.edges[e].1
    }

    pub(crate) fn deleted(&self, e: usize) -> Reduced {
        let mut edges = self.edges.clone();
        edges.swap_remove(e);
        Reduced { edges }
    }

    /// Contracts edge `e`, merging its larger endpoint into the smaller one.
    /// Edges parallel to `e` become loops.
    pub(crate) fn contracted(&self, e: usize) -> Reduced {
        let (keep, gone) = self.edges[e];
        let mut edges = self.edges.clone();
        edges.swap_remove(e);
        for x in &mut edges {
            let a = if x.0 == gone { keep } else { x.0 };
            let b = if x.1 == gone { keep } else { x.1 };
            *x = (a.min(b), a.max(b));
        }
        Reduced { edges }
    }

    /// Number of components among the non-isolated vertices.
    pub(crate) fn components(&self) -> usize {
        let deg = self.degrees();
        let mut dsu = Dsu::new(deg.len());
        for &(a, b) in &self.edges {
            dsu.union(a as usize, b as usize);
        }
        dsu.sets() - deg.iter().filter(|&&d| d == 0).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contraction_makes_parallel_edges_loops() {
        let r = Reduced::from_graph(&Multigraph::digon());
        let c = r.contracted(0);
        assert_eq!(c.edges, vec![(0, 0)]);
    }

    #[test]
    fn canonical_key_ignores_labels() {
        let a = Multigraph::new(4, [(0, 1), (1, 2), (1, 3)]).unwrap();
        let b = Multigraph::new(4, [(3, 2), (2, 0), (2, 1)]).unwrap();
        assert_eq!(Reduced::from_graph(&a).canonicalize(), Reduced::from_graph(&b).canonicalize());
    }

    #[test]
    fn bridges() {
        let r = Reduced::from_graph(&Multigraph::new(3, [(0, 1), (0, 1), (1, 2)]).unwrap());
        assert!(!r.is_bridge(0));
        assert!(r.is_bridge(2));
    }

    #[test]
    fn series_suppression() {
        let mut r = Reduced::from_graph(&Multigraph::triangle());
        assert!(r.suppress_degree_two());
        assert_eq!(r.edges.len(), 2);
    }
}
