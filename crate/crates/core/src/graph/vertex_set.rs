use alloc::vec::Vec;
use core::ops::Deref;

use super::Vertex;

/// A sorted, duplicate-free set of vertex indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    pub fn new<I: IntoIterator<Item = Vertex>>(vertices: I) -> Self {
        let mut v: Vec<_> = vertices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    pub fn pair(x: Vertex, y: Vertex) -> Self {
        Self::new([x, y])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn symmetric_difference(&self, other: &VertexSet) -> VertexSet {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            match (self.0.get(i), other.0.get(j)) {
                (Some(a), Some(b)) if a == b => {
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a < b => {
                    out.push(*a);
                    i += 1;
                }
                (Some(_), Some(b)) => {
                    out.push(*b);
                    j += 1;
                }
                (Some(a), None) => {
                    out.push(*a);
                    i += 1;
                }
                (None, Some(b)) => {
                    out.push(*b);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        VertexSet(out)
    }

    /// Bit mask over vertices `0..64`; `None` if any vertex is out of range.
    pub fn to_mask(&self) -> Option<u64> {
        self.0.iter().try_fold(0u64, |acc, &v| (v < 64).then(|| acc | 1 << v))
    }

    pub fn from_mask(mask: u64) -> Self {
        VertexSet((0..64).filter(|v| mask >> v & 1 == 1).collect())
    }
}

/// The odd-degree vertices `∂m` of a current configuration.
///
/// Only produced by [`Multigraph::source_set`](super::Multigraph::source_set),
/// so its cardinality is always even.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SourceSet(VertexSet);

impl SourceSet {
    pub(crate) fn from_parity(odd: &[bool]) -> Self {
        let set = VertexSet(odd.iter().enumerate().filter(|(_, &o)| o).map(|(v, _)| v).collect());
        debug_assert!(set.len().is_multiple_of(2));
        SourceSet(set)
    }

    pub fn into_inner(self) -> VertexSet {
        self.0
    }
}

impl Deref for SourceSet {
    type Target = VertexSet;

    fn deref(&self) -> &VertexSet {
        &self.0
    }
}

impl PartialEq<VertexSet> for SourceSet {
    fn eq(&self, other: &VertexSet) -> bool {
        &self.0 == other
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_difference_cases() {
        let a = VertexSet::new([0, 2, 5]);
        let b = VertexSet::new([2, 3]);
        assert_eq!(a.symmetric_difference(&b).as_slice(), &[0, 3, 5]);
        assert_eq!(a.symmetric_difference(&a), VertexSet::empty());
        assert_eq!(VertexSet::empty().symmetric_difference(&b), b);
    }

    #[test]
    fn masks_round_trip() {
        let a = VertexSet::new([1, 4, 4, 63]);
        assert_eq!(VertexSet::from_mask(a.to_mask().unwrap()), a);
        assert_eq!(VertexSet::new([64]).to_mask(), None);
    }
}
