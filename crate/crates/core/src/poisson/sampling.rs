use alloc::vec::Vec;

use num_traits::ToPrimitive;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::IntensityVector;
use crate::error::{Error, Result};
use crate::graph::{Multigraph, Multiplicities, Vertex};
use crate::limits::Limits;
use crate::math::{exp, sqrt};
use crate::poly::FlowCounter;

/// Samples per work unit. Chunk accumulators are merged in chunk order, so
/// the estimate does not depend on how chunks are spread over threads.
pub const MC_CHUNK: u64 = 1024;

/// Largest intensity the inversion sampler accepts (`e^{−λ}` stays normal).
const MAX_SAMPLING_INTENSITY: f64 = 700.0;

/// The random stream for sample `index`: ChaCha8 seeded from `seed`, on
/// stream number `index`. Edge `e` consumes the `e`-th `u64`.
pub fn sample_stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn uniform(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Smallest `k` with `ℙ(Po(λ) ≤ k) > u`, by cumulative search.
pub fn poisson_inversion(lambda: f64, u: f64) -> u32 {
    if lambda <= 0.0 {
        return 0;
    }
    let mut k = 0u32;
    let mut p = exp(-lambda);
    let mut cdf = p;
    while u >= cdf {
        k += 1;
        p *= lambda / k as f64;
        if p == 0.0 {
            break;
        }
        cdf += p;
    }
    k
}

/// Independent `Poisson(λ_e)` multiplicities, one uniform per edge in edge
/// order.
pub fn sample_multiplicities(g: &Multigraph, lambda: &IntensityVector, rng: &mut impl RngCore) -> Result<Multiplicities> {
    lambda.check_len(g.edge_count())?;
    if lambda.iter().any(|l| l > MAX_SAMPLING_INTENSITY) {
        return Err(Error::invalid("intensity too large for inversion sampling"));
    }
    Ok(Multiplicities::new(lambda.iter().map(|l| poisson_inversion(l, uniform(rng)))))
}

/// A Monte Carlo estimate. `samples` counts accepted draws; draws whose
/// multigraph exceeded the edge cap are counted in `rejected` and left out
/// of the mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
    pub rejected: u64,
}

/// Running means and co-moments of paired observations `(num, den)`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct MomentAccumulator {
    n: u64,
    rejected: u64,
    mean_num: f64,
    mean_den: f64,
    m2_num: f64,
    m2_den: f64,
    co: f64,
}

impl MomentAccumulator {
    pub fn push(&mut self, num: f64, den: f64) {
        self.n += 1;
        let n = self.n as f64;
        let dn = num - self.mean_num;
        let dd = den - self.mean_den;
        self.mean_num += dn / n;
        self.mean_den += dd / n;
        self.m2_num += dn * (num - self.mean_num);
        self.m2_den += dd * (den - self.mean_den);
        self.co += dn * (den - self.mean_den);
    }

    pub fn reject(&mut self) {
        self.rejected += 1;
    }

    pub fn count(&self) -> u64 {
        self.n
    }

    /// Pairwise combination of two disjoint batches.
    pub fn merge(&self, other: &MomentAccumulator) -> MomentAccumulator {
        if self.n == 0 {
            return MomentAccumulator { rejected: self.rejected + other.rejected, ..*other };
        }
        if other.n == 0 {
            return MomentAccumulator { rejected: self.rejected + other.rejected, ..*self };
        }
        let (na, nb) = (self.n as f64, other.n as f64);
        let n = na + nb;
        let dn = other.mean_num - self.mean_num;
        let dd = other.mean_den - self.mean_den;
        MomentAccumulator {
            n: self.n + other.n,
            rejected: self.rejected + other.rejected,
            mean_num: self.mean_num + dn * nb / n,
            mean_den: self.mean_den + dd * nb / n,
            m2_num: self.m2_num + other.m2_num + dn * dn * na * nb / n,
            m2_den: self.m2_den + other.m2_den + dd * dd * na * nb / n,
            co: self.co + other.co + dn * dd * na * nb / n,
        }
    }

    fn spread(&self, m2: f64) -> f64 {
        match self.n {
            0 | 1 => f64::INFINITY,
            n => sqrt((m2 / (n - 1) as f64).max(0.0) / n as f64),
        }
    }

    /// Sample mean of the denominators.
    pub fn mean_estimate(&self, seed: u64) -> McEstimate {
        McEstimate {
            mean: if self.n == 0 { f64::NAN } else { self.mean_den },
            std_error: self.spread(self.m2_den),
            samples: self.n,
            seed,
            rejected: self.rejected,
        }
    }

    /// `mean(num) / mean(den)`, standard error by the delta method.
    pub fn ratio_estimate(&self, seed: u64) -> McEstimate {
        let r = self.mean_num / self.mean_den;
        let std_error = if self.n < 2 {
            f64::INFINITY
        } else {
            let k = (self.n - 1) as f64;
            let var = (self.m2_num - 2.0 * r * self.co + r * r * self.m2_den) / k;
            sqrt(var.max(0.0) / self.n as f64) / self.mean_den.abs()
        };
        McEstimate { mean: r, std_error, samples: self.n, seed, rejected: self.rejected }
    }
}

/// Draws `C(G_m; q)` and, with a pair set, `C(G_m^{x,y}; q)` from the same
/// multiplicities. Holds a memo across draws; keep one per thread.
#[derive(Debug, Clone)]
pub struct FlowSampler<'a> {
    g: &'a Multigraph,
    lambda: &'a IntensityVector,
    pair: Option<(Vertex, Vertex)>,
    seed: u64,
    limits: Limits,
    counter: FlowCounter,
}

impl<'a> FlowSampler<'a> {
    pub fn new(
        g: &'a Multigraph,
        lambda: &'a IntensityVector,
        q: u32,
        pair: Option<(Vertex, Vertex)>,
        seed: u64,
        limits: &Limits,
    ) -> Result<Self> {
        lambda.check_len(g.edge_count())?;
        if q < 2 {
            return Err(Error::invalid("q must be at least 2"));
        }
        if let Some((x, y)) = pair {
            g.check_distinct_pair(x, y)?;
        }
        Ok(FlowSampler { g, lambda, pair, seed, limits: *limits, counter: FlowCounter::new(q) })
    }

    /// `(numerator, denominator)` for sample `index`, or `None` when the
    /// sampled multigraph has more edges than the cap.
    pub fn sample(&mut self, index: u64) -> Result<Option<(f64, f64)>> {
        let m = sample_multiplicities(self.g, self.lambda, &mut sample_stream(self.seed, index))?;
        let extra = self.pair.is_some() as u64;
        if m.total() + extra > self.limits.sample_edges as u64 {
            return Ok(None);
        }
        let gm = self.g.expand(&m)?;
        let den = self.counter.count(&gm).to_f64().unwrap_or(f64::INFINITY);
        let num = match self.pair {
            Some((x, y)) => self.counter.count(&gm.add_pair_edge(x, y)?).to_f64().unwrap_or(f64::INFINITY),
            None => den,
        };
        Ok(Some((num, den)))
    }

    /// Accumulates samples `chunk·MC_CHUNK ..` up to `samples` in total.
    pub fn chunk(&mut self, chunk: u64, samples: u64) -> Result<MomentAccumulator> {
        let mut acc = MomentAccumulator::default();
        let start = chunk * MC_CHUNK;
        for i in start..samples.min(start + MC_CHUNK) {
            match self.sample(i)? {
                Some((num, den)) => acc.push(num, den),
                None => acc.reject(),
            }
        }
        Ok(acc)
    }
}

/// Number of chunks covering `samples` draws.
pub fn chunk_count(samples: u64) -> u64 {
    samples.div_ceil(MC_CHUNK)
}

fn run(sampler: &mut FlowSampler<'_>, samples: u64) -> Result<MomentAccumulator> {
    if samples == 0 {
        return Err(Error::invalid("need at least one sample"));
    }
    let chunks: Vec<MomentAccumulator> =
        (0..chunk_count(samples)).map(|c| sampler.chunk(c, samples)).collect::<Result<_>>()?;
    Ok(chunks.iter().fold(MomentAccumulator::default(), |acc, c| acc.merge(c)))
}

/// Sample mean of `C(G_P; q)` over `samples` seeded draws.
pub fn expect_flow_mc(
    g: &Multigraph,
    lambda: &IntensityVector,
    q: u32,
    samples: u64,
    seed: u64,
    limits: &Limits,
) -> Result<McEstimate> {
    let mut sampler = FlowSampler::new(g, lambda, q, None, seed, limits)?;
    Ok(run(&mut sampler, samples)?.mean_estimate(seed))
}

/// `σ(x, y)` as a ratio of sample means over common multiplicities.
#[allow(clippy::too_many_arguments)]
pub fn sigma_flow_ratio_mc(
    g: &Multigraph,
    lambda: &IntensityVector,
    q: u32,
    x: Vertex,
    y: Vertex,
    samples: u64,
    seed: u64,
    limits: &Limits,
) -> Result<McEstimate> {
    g.require_loopless()?;
    let mut sampler = FlowSampler::new(g, lambda, q, Some((x, y)), seed, limits)?;
    Ok(run(&mut sampler, samples)?.ratio_estimate(seed))
}
