use std::fmt::Display;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use ferroflow_core::currents::{
    appls_identity_i, appls_identity_ii, sigma_source_ratio, simon_check, switching_check_poisson, SwitchingTable,
};
use ferroflow_core::poisson::{
    even_ratio_sigma, sigma_flow_ratio_exact, verify_compflow, verify_curiosity, verify_even_open_identity,
    verify_flowconn_tutte, verify_partition_identity, IdentityCheck, IntensityVector, Truncation,
};
use ferroflow_core::poly::{
    count_flows_dc, count_flows_enum, count_flows_whitney, exact, flow_polynomial, ratio, tutte_eval_dc,
    tutte_eval_whitney, whitney_eval, whitney_eval_alt, ExactScalar,
};
use ferroflow_core::potts::{potts_sigma_matrix, verify_corrconn_exact, verify_rc_whitney, PottsParams};
use ferroflow_core::{Error as CoreError, Limits, Multigraph, Multiplicities, VertexSet};
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::catalogue::{Catalogue, NamedGraph};
use crate::config::RunConfig;
use crate::error::CliResult;
use crate::output::{float, float_cell, Record};

/// Float tolerance for routes that should agree up to rounding.
const ROUNDING: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Polys,
    Theorem1,
    Theorem2,
    Switching,
    Simon,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Which group of identities to check
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Catalogue file (TOML); the built-in catalogue when absent
    #[arg(long, env = "FERROFLOW_CATALOGUE", value_name = "PATH")]
    pub catalogue: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Uncertified,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Uncertified => "uncertified",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportEntry {
    pub suite: &'static str,
    pub identity: &'static str,
    pub instance: String,
    pub lhs: String,
    pub rhs: String,
    pub bound: Option<f64>,
    pub status: Status,
}

impl Record for ReportEntry {
    const COLUMNS: &'static [&'static str] = &["suite", "identity", "instance", "lhs", "rhs", "bound", "status"];

    fn cells(&self) -> Vec<String> {
        vec![
            self.suite.to_string(),
            self.identity.to_string(),
            self.instance.clone(),
            self.lhs.clone(),
            self.rhs.clone(),
            float_cell(&self.bound),
            self.status.name().to_string(),
        ]
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerificationReport {
    pub entries: Vec<ReportEntry>,
}

impl VerificationReport {
    pub fn count(&self, status: Status) -> usize {
        self.entries.iter().filter(|e| e.status == status).count()
    }

    pub fn failed(&self) -> bool {
        self.count(Status::Fail) > 0
    }
}

/// The outcome of one comparison, before it is labelled.
struct Check {
    lhs: String,
    rhs: String,
    bound: Option<f64>,
    status: Status,
}

impl Check {
    fn exact(lhs: impl Display, rhs: impl Display, equal: bool) -> Check {
        Check { lhs: lhs.to_string(), rhs: rhs.to_string(), bound: None, status: pass_if(equal) }
    }

    fn within(lhs: f64, rhs: f64, tol: f64) -> Check {
        Check { lhs: float(lhs), rhs: float(rhs), bound: Some(tol), status: pass_if((lhs - rhs).abs() <= tol) }
    }

    fn identity(c: &IdentityCheck) -> Check {
        let status = match (c.certified, c.passes()) {
            (_, true) => Status::Pass,
            (false, false) => Status::Uncertified,
            (true, false) => Status::Fail,
        };
        Check { lhs: float(c.lhs), rhs: float(c.rhs), bound: Some(c.bound + c.slack), status }
    }
}

fn pass_if(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

/// Builds report entries for one suite; computation errors become entries.
struct Recorder {
    suite: &'static str,
    entries: Vec<ReportEntry>,
}

impl Recorder {
    fn new(suite: &'static str) -> Self {
        Recorder { suite, entries: Vec::new() }
    }

    fn record(&mut self, identity: &'static str, instance: impl Into<String>, check: Result<Check, CoreError>) {
        let check = check.unwrap_or_else(|e| {
            // Running out of budget, or a bound too loose to decide, is not
            // evidence against the identity.
            let status = match e {
                CoreError::CapExceeded { .. } | CoreError::DegenerateDenominator => Status::Uncertified,
                _ => Status::Fail,
            };
            Check { lhs: format!("error: {e}"), rhs: String::new(), bound: None, status }
        });
        self.entries.push(ReportEntry {
            suite: self.suite,
            identity,
            instance: instance.into(),
            lhs: check.lhs,
            rhs: check.rhs,
            bound: check.bound,
            status: check.status,
        });
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |x| (x + 1..n).map(move |y| (x, y)))
}

fn set_label(a: &VertexSet) -> String {
    let items: Vec<String> = a.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn to_exact(x: f64) -> ExactScalar {
    ExactScalar::from_float(x).expect("finite catalogue value")
}

fn polys(ng: &NamedGraph, cat: &Catalogue, limits: &Limits) -> Vec<ReportEntry> {
    let (name, g) = (&ng.name, &ng.graph);
    let mut r = Recorder::new("polys");
    let poly = flow_polynomial(g);
    for &q in &cat.q {
        let inst = format!("{name} q={q}");
        let dc = count_flows_dc(g, q);
        let brute = count_flows_enum(g, q, limits);
        r.record("flow-count-dc", &inst, brute.clone().map(|e| Check::exact(&e, &dc, e == dc)));
        r.record(
            "flow-count-whitney",
            &inst,
            count_flows_whitney(g, q, limits).map(|w| Check::exact(&w, &dc, w == dc)),
        );
        r.record(
            "flow-polynomial",
            &inst,
            poly.clone().map(|p| {
                let v = p.eval(&q.into());
                Check::exact(&v, &dc, v == dc)
            }),
        );
        // Reverse every edge, then every other edge.
        for (label, modulus) in [("all", 1), ("alternate", 2)] {
            let flips: Vec<bool> = (0..g.edge_count()).map(|e| e % modulus == modulus - 1).collect();
            let check = g.reoriented(&flips).and_then(|h| {
                let before = brute.clone()?;
                let after = count_flows_enum(&h, q, limits)?;
                Ok(Check::exact(&after, &before, after == before))
            });
            r.record("orientation-invariance", format!("{inst} reversed={label}"), check);
        }
    }
    let (u, v) = (ratio(1, 2), ratio(3, 2));
    r.record(
        "whitney-forms",
        format!("{name} u={u} v={v}"),
        whitney_eval(g, &u, &v, limits).and_then(|a| {
            let b = whitney_eval_alt(g, &u, &v, limits)?;
            Ok(Check::exact(&a, &b, a == b))
        }),
    );
    let (u, v) = (exact(3), ratio(-1, 2));
    r.record(
        "tutte-routes",
        format!("{name} u={u} v={v}"),
        tutte_eval_whitney(g, &u, &v, limits).map(|a| {
            let b = tutte_eval_dc(g, &u, &v);
            Check::exact(&a, &b, a == b)
        }),
    );
    let qs = cat.q.iter().map(|&q| exact(q.into())).chain(cat.q_real.iter().map(|&q| to_exact(q)));
    for q in qs {
        for p in &cat.p {
            r.record(
                "rc-whitney",
                format!("{name} p={p} q={q}"),
                verify_rc_whitney(g, p, &q, limits).map(|d| Check::exact(&d, 0, d.is_zero())),
            );
        }
    }
    r.entries
}

fn theorem1_graph(g: &Multigraph, cat: &Catalogue) -> bool {
    !g.has_loops() && g.vertex_count() >= 2 && g.vertex_count() <= cat.theorem1.max_vertices
}

fn theorem1(ng: &NamedGraph, cat: &Catalogue, limits: &Limits, target: f64) -> Vec<ReportEntry> {
    let (name, g) = (&ng.name, &ng.graph);
    let mut r = Recorder::new("theorem1");
    if !theorem1_graph(g, cat) {
        return r.entries;
    }
    let edges = g.edge_count();
    for &q in &cat.q {
        for p in &cat.p {
            let pe = vec![p.clone(); edges];
            r.record(
                "correlation-connection",
                format!("{name} q={q} p={p}"),
                verify_corrconn_exact(g, q, &pe, limits).map(|c| Check::exact(&c.worst, 0, c.worst.is_zero())),
            );
        }
        for &lam in &cat.lambda {
            let inst = format!("{name} q={q} lambda={lam}");
            let lambda = match IntensityVector::uniform(lam, edges) {
                Ok(l) => l,
                Err(e) => {
                    r.record("partition-identity", &inst, Err(e));
                    continue;
                }
            };
            r.record(
                "partition-identity",
                &inst,
                verify_partition_identity(g, &lambda, q, Truncation::Target(target), limits).map(|c| Check::identity(&c)),
            );
            let spins = PottsParams::uniform(q, lam, edges).and_then(|p| potts_sigma_matrix(g, &p, limits));
            for (x, y) in pairs(g.vertex_count()) {
                let inst = format!("{inst} x={x} y={y}");
                let check = spins.clone().and_then(|s| {
                    let f = sigma_flow_ratio_exact(g, &lambda, q, x, y, Truncation::Target(target), limits)?;
                    let ok = (f.value - s[x][y]).abs() <= f.bound + ROUNDING;
                    let status = match (ok, f.certified) {
                        (true, true) => Status::Pass,
                        (_, false) => Status::Uncertified,
                        (false, true) => Status::Fail,
                    };
                    Ok(Check {
                        lhs: float(f.value),
                        rhs: float(s[x][y]),
                        bound: Some(f.bound + ROUNDING),
                        status,
                    })
                });
                r.record("flow-ratio-sigma", &inst, check);
                if q == 2 {
                    r.record(
                        "even-parity-ratio",
                        &inst,
                        spins.clone().and_then(|s| Ok(Check::within(even_ratio_sigma(g, &lambda, x, y, limits)?, s[x][y], ROUNDING))),
                    );
                    r.record(
                        "source-ratio",
                        &inst,
                        spins.clone().and_then(|s| Ok(Check::within(sigma_source_ratio(g, &lambda, x, y, limits)?, s[x][y], ROUNDING))),
                    );
                }
            }
        }
    }
    r.entries
}

fn theorem2(ng: &NamedGraph, cat: &Catalogue, limits: &Limits, target: f64) -> Vec<ReportEntry> {
    let (name, g) = (&ng.name, &ng.graph);
    let mut r = Recorder::new("theorem2");
    for p in &cat.p {
        let pf = p.to_f64().unwrap_or(f64::NAN);
        for &q in &cat.q {
            r.record(
                "complement-flow",
                format!("{name} q={q} p={p}"),
                verify_compflow(g, pf, q, Truncation::Target(target), limits).map(|c| Check::identity(&c)),
            );
        }
        r.record(
            "even-subgraph-parity",
            format!("{name} p={p}"),
            verify_curiosity(g, pf, limits).map(|c| Check::identity(&c)),
        );
        r.record(
            "even-open",
            format!("{name} p={p}"),
            verify_even_open_identity(g, p, limits).map(|d| Check::exact(&d, 0, d.is_zero())),
        );
        if theorem1_graph(g, cat) {
            for &q in &cat.q_real {
                for (x, y) in pairs(g.vertex_count()) {
                    r.record(
                        "flow-connection-tutte",
                        format!("{name} q={q} p={p} x={x} y={y}"),
                        verify_flowconn_tutte(g, pf, q, x, y, Truncation::Target(target), limits)
                            .map(|c| Check::identity(&c)),
                    );
                }
            }
        }
    }
    r.entries
}

fn switching_fixed(ng: &NamedGraph, cat: &Catalogue, limits: &Limits) -> Vec<ReportEntry> {
    let (name, g) = (&ng.name, &ng.graph);
    let mut r = Recorder::new("switching");
    if g.edge_count() > cat.switching.max_edges || g.vertex_count() > 20 {
        return r.entries;
    }
    let max = cat.switching.max_total;
    let n = g.vertex_count();
    let check = (|| -> Result<Check, CoreError> {
        let (mut instances, mut exceptions, mut lhs, mut rhs) = (0u64, 0u64, 0u64, 0u64);
        for m in Multiplicities::all_bounded(g.edge_count(), max).filter(|m| m.total() <= max as u64) {
            let table = SwitchingTable::new(g, &m, limits)?;
            for (x, y) in pairs(n) {
                if !g.connected_in(&m, x, y)? {
                    continue;
                }
                for mask in 0..1u64 << n {
                    let c = table.counts(x, y, &VertexSet::from_mask(mask));
                    instances += 1;
                    exceptions += (c.lhs != c.rhs) as u64;
                    lhs += c.lhs;
                    rhs += c.rhs;
                }
            }
        }
        Ok(Check {
            lhs: format!("{lhs} over {instances} instances"),
            rhs: rhs.to_string(),
            bound: None,
            status: pass_if(exceptions == 0),
        })
    })();
    r.record("switching-fixed", format!("{name} sum(m)<={max}"), check);
    r.entries
}

fn switching_poisson(cat: &Catalogue, limits: &Limits) -> CliResult<Vec<ReportEntry>> {
    let mut r = Recorder::new("switching");
    let b = &cat.switching;
    for name in &b.graphs {
        let g = cat.resolve(name)?;
        for &lam in &b.lambda {
            let lambda = IntensityVector::uniform(lam, g.edge_count())?;
            for (x, y) in pairs(g.vertex_count()) {
                for mask in 0..1u64 << g.vertex_count() {
                    let a = VertexSet::from_mask(mask);
                    let check = switching_check_poisson(&g, &lambda, x, y, &a, b.truncation, limits).map(|c| Check {
                        lhs: float(c.lhs_direct),
                        rhs: float(c.rhs_direct),
                        bound: Some(c.tail_bound),
                        status: pass_if(c.passes()),
                    });
                    r.record("switching-poisson", format!("{name} lambda={lam} x={x} y={y} A={}", set_label(&a)), check);
                }
            }
        }
    }
    let b = &cat.products;
    for name in &b.graphs {
        let g = cat.resolve(name)?;
        let n = g.vertex_count();
        for &lam in &b.lambda {
            let lambda = IntensityVector::uniform(lam, g.edge_count())?;
            for (x, y) in (0..n).flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y))) {
                let inst = format!("{name} lambda={lam} x={x} y={y}");
                let check = appls_identity_i(&g, &lambda, x, y, b.truncation, limits).map(|c| Check {
                    lhs: float(c.lhs),
                    rhs: float(c.rhs),
                    bound: Some(c.bound),
                    status: pass_if(c.passes()),
                });
                r.record("correlation-product-i", &inst, check);
                for z in (0..n).filter(|&z| z != x && z != y) {
                    let check = appls_identity_ii(&g, &lambda, x, y, z, b.truncation, limits).map(|c| Check {
                        lhs: float(c.lhs),
                        rhs: float(c.rhs),
                        bound: Some(c.bound),
                        status: pass_if(c.passes()),
                    });
                    r.record("correlation-product-ii", format!("{inst} z={z}"), check);
                }
            }
        }
    }
    Ok(r.entries)
}

fn simon(cat: &Catalogue, limits: &Limits) -> CliResult<Vec<ReportEntry>> {
    let mut r = Recorder::new("simon");
    for s in &cat.simon {
        let g = cat.resolve(&s.graph)?;
        let w = VertexSet::new(s.w.iter().copied());
        for &lam in s.lambda.as_ref().unwrap_or(&cat.lambda) {
            let inst = format!("{} lambda={lam} x={} z={} W={}", s.graph, s.x, s.z, set_label(&w));
            let check = IntensityVector::uniform(lam, g.edge_count())
                .and_then(|l| simon_check(&g, &l, s.x, s.z, &w, limits))
                .map(|c| {
                    let ok = c.margin >= -ROUNDING && (!s.equality || c.margin.abs() <= ROUNDING);
                    Check { lhs: float(c.lhs), rhs: float(c.rhs), bound: Some(ROUNDING), status: pass_if(ok) }
                });
            r.record(if s.equality { "simon-equality" } else { "simon" }, inst, check);
        }
    }
    Ok(r.entries)
}

fn per_graph<F>(cat: &Catalogue, f: F) -> Vec<ReportEntry>
where
    F: Fn(&NamedGraph) -> Vec<ReportEntry> + Send + Sync,
{
    cat.graphs.par_iter().map(f).collect::<Vec<_>>().concat()
}

pub fn run(args: &VerifyArgs, cfg: &RunConfig) -> CliResult<VerificationReport> {
    let cat = match &args.catalogue {
        Some(path) => Catalogue::load(path)?,
        None => Catalogue::builtin()?,
    };
    let limits = &cfg.limits;
    let target = cfg.truncation_target;
    let wants = |s: Suite| args.suite == Suite::All || args.suite == s;
    let pool = cfg.pool()?;
    pool.install(|| {
        let mut entries = Vec::new();
        if wants(Suite::Polys) {
            entries.extend(per_graph(&cat, |g| polys(g, &cat, limits)));
        }
        if wants(Suite::Theorem1) {
            entries.extend(per_graph(&cat, |g| theorem1(g, &cat, limits, target)));
        }
        if wants(Suite::Theorem2) {
            entries.extend(per_graph(&cat, |g| theorem2(g, &cat, limits, target)));
        }
        if wants(Suite::Switching) {
            entries.extend(per_graph(&cat, |g| switching_fixed(g, &cat, limits)));
            entries.extend(switching_poisson(&cat, limits)?);
        }
        if wants(Suite::Simon) {
            entries.extend(simon(&cat, limits)?);
        }
        Ok(VerificationReport { entries })
    })
}
