use alloc::vec::Vec;

use super::bernoulli::source_prob;
use super::bernoulli_density;
use crate::error::{Error, Result};
use crate::graph::{Multigraph, Multiplicities, VertexSet};
use crate::limits::Limits;
use crate::poisson::{sample_multiplicities, sample_stream, IntensityVector};

/// Disjoint label sets `M_e`, one per edge. Labels are consecutive
/// integers, edge 0 first, so label `i` is the `i`-th copy in `G_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurrentLabelling {
    sets: Vec<core::ops::Range<u32>>,
}

impl CurrentLabelling {
    pub fn from_multiplicities(m: &Multiplicities) -> Self {
        let mut next = 0;
        let sets = m
            .as_slice()
            .iter()
            .map(|&k| {
                let r = next..next + k;
                next += k;
                r
            })
            .collect();
        CurrentLabelling { sets }
    }

    pub fn labels(&self, e: usize) -> core::ops::Range<u32> {
        self.sets[e].clone()
    }

    /// `m_e = |M_e|`.
    pub fn sizes(&self) -> Multiplicities {
        Multiplicities::new(self.sets.iter().map(|r| r.end - r.start))
    }

    pub fn label_count(&self) -> u32 {
        self.sets.last().map_or(0, |r| r.end)
    }

    /// Edge of each label, in label order.
    pub fn owners(&self) -> Vec<usize> {
        self.sets.iter().enumerate().flat_map(|(e, r)| r.clone().map(move |_| e)).collect()
    }

    /// Sizes of the sub-labelling `N` picked by a bit mask over labels.
    pub fn restrict(&self, mask: u64) -> Multiplicities {
        Multiplicities::new(self.sets.iter().map(|r| r.clone().filter(|i| mask >> i & 1 == 1).count() as u32))
    }
}

/// The law `ℚ_A` of a Poisson multiplicity vector conditioned on `∂P = A`.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceLaw {
    lambda: IntensityVector,
    sources: VertexSet,
}

impl SourceLaw {
    pub fn new(lambda: IntensityVector, sources: VertexSet) -> Result<Self> {
        if sources.len() % 2 == 1 {
            return Err(Error::invalid("a source set has even size"));
        }
        Ok(SourceLaw { lambda, sources })
    }

    pub fn sources(&self) -> &VertexSet {
        &self.sources
    }

    pub fn intensities(&self) -> &IntensityVector {
        &self.lambda
    }

    /// `ℙ_λ(∂P = A)`.
    pub fn normalizer(&self, g: &Multigraph, limits: &Limits) -> Result<f64> {
        let p: Vec<f64> = self.lambda.iter().map(bernoulli_density).collect::<Result<_>>()?;
        source_prob(g, &p, &self.sources, limits)
    }

    /// Rejection sampler for spot checks: draws `P` on stream `(seed, index)`
    /// until `∂P = A`, giving up after `tries` draws. Attempt `t` uses
    /// stream `index · tries + t`.
    pub fn sample(&self, g: &Multigraph, seed: u64, index: u64, tries: u64) -> Result<Option<Multiplicities>> {
        for t in 0..tries {
            let mut rng = sample_stream(seed, index.wrapping_mul(tries).wrapping_add(t));
            let m = sample_multiplicities(g, &self.lambda, &mut rng)?;
            if g.source_set(&m)? == self.sources {
                return Ok(Some(m));
            }
        }
        Ok(None)
    }
}
