use clap::{Args, ValueEnum};
use ferroflow_core::currents::sigma_source_ratio;
use ferroflow_core::poisson::{
    chunk_count, even_ratio_sigma, sigma_flow_ratio_exact, FlowSampler, IntensityVector, McEstimate,
    MomentAccumulator, Truncation,
};
use ferroflow_core::potts::potts_sigma;
use ferroflow_core::{Error as CoreError, Limits, Multigraph, Vertex};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::output::{cell, float, float_cell, Record};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// Spin enumeration
    Spin,
    /// Ratio of truncated flow-count expectations with a certified bound
    FlowExact,
    /// Ratio of Monte Carlo flow-count means
    FlowMc,
    /// Even-subgraph parity ratio (q = 2)
    Even,
    /// Source-set ratio of Bernoulli currents (q = 2)
    Source,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Spin => "spin",
            Route::FlowExact => "flow-exact",
            Route::FlowMc => "flow-mc",
            Route::Even => "even",
            Route::Source => "source",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SigmaArgs {
    /// Computation route
    #[arg(long, value_enum, default_value_t = Route::Spin)]
    pub route: Route,
}

/// One correlation value with whatever error information its route gives.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Estimate {
    pub value: f64,
    pub bound: Option<f64>,
    pub std_error: Option<f64>,
    pub samples: Option<u64>,
    pub rejected: Option<u64>,
    pub seed: Option<u64>,
    pub truncation_level: Option<u32>,
    pub certified: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SigmaRecord {
    pub graph: String,
    pub route: Route,
    pub q: u32,
    pub x: Vertex,
    pub y: Vertex,
    pub value: f64,
    pub bound: Option<f64>,
    pub std_error: Option<f64>,
    pub samples: Option<u64>,
    pub rejected: Option<u64>,
    pub seed: Option<u64>,
    pub truncation_level: Option<u32>,
    pub certified: Option<bool>,
}

impl Record for SigmaRecord {
    const COLUMNS: &'static [&'static str] = &[
        "graph",
        "route",
        "q",
        "x",
        "y",
        "value",
        "bound",
        "std_error",
        "samples",
        "rejected",
        "seed",
        "truncation_level",
        "certified",
    ];

    fn cells(&self) -> Vec<String> {
        vec![
            self.graph.clone(),
            self.route.name().to_string(),
            self.q.to_string(),
            self.x.to_string(),
            self.y.to_string(),
            float(self.value),
            float_cell(&self.bound),
            float_cell(&self.std_error),
            cell(&self.samples),
            cell(&self.rejected),
            cell(&self.seed),
            cell(&self.truncation_level),
            cell(&self.certified),
        ]
    }
}

/// Monte Carlo ratio over chunks spread across the current rayon pool.
/// Chunks are merged in index order, so the estimate is the same for any
/// worker count.
#[allow(clippy::too_many_arguments)]
pub fn flow_ratio_mc(
    g: &Multigraph,
    lambda: &IntensityVector,
    q: u32,
    x: Vertex,
    y: Vertex,
    samples: u64,
    seed: u64,
    limits: &Limits,
) -> CliResult<McEstimate> {
    if g.has_loops() {
        return Err(CoreError::LoopsPresent.into());
    }
    if samples == 0 {
        return Err(CliError::usage("--samples must be positive"));
    }
    // Fails early on bad input before any thread starts.
    FlowSampler::new(g, lambda, q, Some((x, y)), seed, limits)?;
    let chunks: Vec<MomentAccumulator> = (0..chunk_count(samples))
        .into_par_iter()
        .map_init(
            || FlowSampler::new(g, lambda, q, Some((x, y)), seed, limits).expect("checked above"),
            |sampler, c| sampler.chunk(c, samples),
        )
        .collect::<Result<_, _>>()?;
    let total = chunks.iter().fold(MomentAccumulator::default(), |acc, c| acc.merge(c));
    Ok(total.ratio_estimate(seed))
}

pub fn estimate(g: &Multigraph, cfg: &RunConfig, route: Route, x: Vertex, y: Vertex) -> CliResult<Estimate> {
    let spec = cfg.intensity()?;
    let limits = &cfg.limits;
    let need_ising = || {
        if cfg.q == 2 {
            Ok(())
        } else {
            Err(CliError::usage(format!("route {} needs q = 2", route.name())))
        }
    };
    let out = match route {
        Route::Spin => {
            let params = spec.potts(cfg.q, g.edge_count())?;
            Estimate { value: potts_sigma(g, &params, x, y, limits)?, ..Estimate::default() }
        }
        Route::FlowExact => {
            spec.potts(cfg.q, g.edge_count())?;
            let lambda = spec.intensities(g.edge_count())?;
            let r = sigma_flow_ratio_exact(g, &lambda, cfg.q, x, y, Truncation::Target(cfg.truncation_target), limits)?;
            Estimate {
                value: r.value,
                bound: Some(r.bound),
                truncation_level: Some(r.truncation_level),
                certified: Some(r.certified),
                ..Estimate::default()
            }
        }
        Route::FlowMc => {
            spec.potts(cfg.q, g.edge_count())?;
            let lambda = spec.intensities(g.edge_count())?;
            let e = flow_ratio_mc(g, &lambda, cfg.q, x, y, cfg.samples, cfg.seed, limits)?;
            Estimate {
                value: e.mean,
                std_error: Some(e.std_error),
                samples: Some(e.samples),
                rejected: Some(e.rejected),
                seed: Some(e.seed),
                ..Estimate::default()
            }
        }
        Route::Even => {
            need_ising()?;
            let lambda = spec.intensities(g.edge_count())?;
            Estimate { value: even_ratio_sigma(g, &lambda, x, y, limits)?, ..Estimate::default() }
        }
        Route::Source => {
            need_ising()?;
            let lambda = spec.intensities(g.edge_count())?;
            Estimate { value: sigma_source_ratio(g, &lambda, x, y, limits)?, ..Estimate::default() }
        }
    };
    Ok(out)
}

pub fn run(args: &SigmaArgs, cfg: &RunConfig) -> CliResult<SigmaRecord> {
    let (label, g) = cfg.graph()?;
    let x = cfg.vertex("x", cfg.x)?;
    let y = cfg.vertex("y", cfg.y)?;
    let e = cfg.pool()?.install(|| estimate(&g, cfg, args.route, x, y))?;
    Ok(SigmaRecord {
        graph: label,
        route: args.route,
        q: cfg.q,
        x,
        y,
        value: e.value,
        bound: e.bound,
        std_error: e.std_error,
        samples: e.samples,
        rejected: e.rejected,
        seed: e.seed,
        truncation_level: e.truncation_level,
        certified: e.certified,
    })
}
