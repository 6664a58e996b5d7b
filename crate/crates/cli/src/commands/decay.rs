use clap::Args;
use ferroflow_core::Vertex;
use serde::Serialize;

use super::sigma::{estimate, Route};
use crate::config::RunConfig;
use crate::error::CliResult;
use crate::output::{float, float_cell, Record};

#[derive(Debug, Clone, Args)]
pub struct DecayArgs {
    /// Computation route
    #[arg(long, value_enum, default_value_t = Route::Spin)]
    pub route: Route,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecayRecord {
    pub graph: String,
    pub route: Route,
    pub q: u32,
    pub x: Vertex,
    pub vertex: Vertex,
    pub distance: usize,
    pub sigma: f64,
    pub bound: Option<f64>,
    pub std_error: Option<f64>,
}

impl Record for DecayRecord {
    const COLUMNS: &'static [&'static str] =
        &["graph", "route", "q", "x", "vertex", "distance", "sigma", "bound", "std_error"];

    fn cells(&self) -> Vec<String> {
        vec![
            self.graph.clone(),
            self.route.name().to_string(),
            self.q.to_string(),
            self.x.to_string(),
            self.vertex.to_string(),
            self.distance.to_string(),
            float(self.sigma),
            float_cell(&self.bound),
            float_cell(&self.std_error),
        ]
    }
}

/// The decay table, plus a monotonicity verdict when `g` is a path and the
/// route has no sampling noise: `σ` must not increase with distance beyond
/// the reported bounds. Vertices are listed by distance from `x`, ties by
/// index; unreachable ones are omitted.
pub fn run(args: &DecayArgs, cfg: &RunConfig) -> CliResult<(Vec<DecayRecord>, Option<bool>)> {
    let (label, g) = cfg.graph()?;
    let x = cfg.x.unwrap_or(0);
    let dist = g.distances_from(x)?;
    let mut targets: Vec<(usize, Vertex)> =
        dist.iter().enumerate().filter_map(|(v, d)| d.filter(|&d| d > 0).map(|d| (d, v))).collect();
    targets.sort_unstable();
    let pool = cfg.pool()?;
    let mut rows = Vec::with_capacity(targets.len());
    for (distance, v) in targets {
        let e = pool.install(|| estimate(&g, cfg, args.route, x, v))?;
        rows.push(DecayRecord {
            graph: label.clone(),
            route: args.route,
            q: cfg.q,
            x,
            vertex: v,
            distance,
            sigma: e.value,
            bound: e.bound,
            std_error: e.std_error,
        });
    }
    let is_path = !g.has_loops()
        && g.is_connected()
        && g.edge_count() + 1 == g.vertex_count()
        && g.degrees().iter().all(|&d| d <= 2);
    let monotone = (is_path && args.route != Route::FlowMc).then(|| {
        rows.windows(2).all(|w| {
            let slack = w[0].bound.unwrap_or(0.0) + w[1].bound.unwrap_or(0.0) + 1e-12;
            w[1].distance == w[0].distance || w[1].sigma <= w[0].sigma + slack
        })
    });
    Ok((rows, monotone))
}
