use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Per-edge copy counts `m(e)` describing `G_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multiplicities(Vec<u32>);

impl Multiplicities {
    pub fn new<I: IntoIterator<Item = u32>>(counts: I) -> Self {
        Multiplicities(counts.into_iter().collect())
    }

    pub fn zeros(len: usize) -> Self {
        Multiplicities(alloc::vec![0; len])
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `Σ m(e)`, the edge count of the expanded graph.
    pub fn total(&self) -> u64 {
        self.0.iter().map(|&k| k as u64).sum()
    }

    /// Bit mask of edges with `m(e) > 0`; only the first 64 edges are tracked.
    pub fn support_mask(&self) -> u64 {
        self.0
            .iter()
            .take(64)
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    /// Entrywise sum `m + m′`.
    pub fn sum(&self, other: &Multiplicities) -> Result<Multiplicities> {
        other.check_len(self.len())?;
        Ok(Multiplicities(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub(crate) fn check_len(&self, expected: usize) -> Result<()> {
        if self.0.len() == expected {
            Ok(())
        } else {
            Err(Error::LengthMismatch { expected, found: self.0.len() })
        }
    }

    /// Every vector in `{0, …, max}^len`, first coordinate fastest.
    pub fn all_bounded(len: usize, max: u32) -> impl Iterator<Item = Multiplicities> {
        let mut cur = Some(alloc::vec![0u32; len]);
        core::iter::from_fn(move || {
            let out = cur.clone()?;
            let next = cur.as_mut()?;
            let mut i = 0;
            loop {
                if i == next.len() {
                    cur = None;
                    break;
                }
                if next[i] < max {
                    next[i] += 1;
                    break;
                }
                next[i] = 0;
                i += 1;
            }
            Some(Multiplicities(out))
        })
    }
}

impl From<Vec<u32>> for Multiplicities {
    fn from(v: Vec<u32>) -> Self {
        Multiplicities(v)
    }
}
