//! Acceptance suite. Each criterion prints one `[PASS]` or `[FAIL]` line;
//! the process exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use ferroflow_core::currents::{
    appls_identity_i, appls_identity_ii, sigma_source_ratio, simon_check, source_prob, SwitchingTable,
};
use ferroflow_core::graph::random::standard_catalogue;
use ferroflow_core::graph::{Multigraph, Multiplicities, VertexSet};
use ferroflow_core::poisson::{
    even_ratio_sigma, exact_expect_flow, expect_flow_mc, sigma_flow_ratio_exact, verify_compflow, verify_curiosity,
    verify_even_open_identity, verify_partition_identity, IntensityVector, Truncation,
};
use ferroflow_core::poly::{count_flows_dc, count_flows_enum, count_flows_whitney, exact, ratio, ExactScalar};
use ferroflow_core::potts::{
    potts_sigma_matrix, verify_corrconn, verify_corrconn_exact, verify_rc_whitney, verify_rc_whitney_f64, PottsParams,
};
use ferroflow_core::Limits;
use num_traits::Zero;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

const LAMBDAS: [f64; 3] = [0.2, 0.5, 1.0];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn limits() -> Limits {
    Limits::default()
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |x| (x + 1..n).map(move |y| (x, y)))
}

fn loopless_small(max_vertices: usize) -> Vec<Multigraph> {
    standard_catalogue()
        .into_iter()
        .filter(|g| !g.has_loops() && g.vertex_count() >= 2 && g.vertex_count() <= max_vertices)
        .collect()
}

fn ac1_flow_triple_agreement() -> Outcome {
    let start = Instant::now();
    let cat = standard_catalogue();
    let (mut cases, mut bad) = (0, 0);
    for g in &cat {
        for q in 2..=5 {
            let dc = count_flows_dc(g, q);
            let en = count_flows_enum(g, q, &limits()).expect("enumeration within cap");
            let wh = count_flows_whitney(g, q, &limits()).expect("subsets within cap");
            cases += 1;
            if dc != en || dc != wh {
                bad += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        bad == 0 && cat.len() >= 200 && secs < 60.0,
        format!("flow triple agreement: {} graphs, {cases} cases, {bad} mismatches, {secs:.1}s (limit 60s)", cat.len()),
    )
}

fn ac2_orientation_invariance() -> Outcome {
    let graphs: Vec<Multigraph> = standard_catalogue().into_iter().filter(|g| g.edge_count() >= 3).take(20).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0213);
    let (mut cases, mut bad) = (0, 0);
    for g in &graphs {
        let base: Vec<_> = (2..=4).map(|q| count_flows_enum(g, q, &limits()).unwrap()).collect();
        for _ in 0..5 {
            let flip: Vec<bool> = (0..g.edge_count()).map(|_| rng.next_u64() & 1 == 1).collect();
            let h = g.reoriented(&flip).unwrap();
            cases += 1;
            let same = (2..=4).zip(&base).all(|(q, b)| count_flows_enum(&h, q, &limits()).unwrap() == *b);
            if !same {
                bad += 1;
            }
        }
    }
    outcome(
        bad == 0 && cases == 100,
        format!("orientation invariance: {cases} re-orientations of {} graphs, {bad} changed counts", graphs.len()),
    )
}

fn ac3_flow_ratio_matches_spins() -> Outcome {
    let start = Instant::now();
    let graphs = loopless_small(4);
    let (mut cases, mut bad, mut worst_bound, mut worst_excess) = (0, 0, 0.0f64, f64::NEG_INFINITY);
    for g in &graphs {
        for q in 2..=4 {
            for lam in LAMBDAS {
                let params = PottsParams::uniform(q, lam, g.edge_count()).unwrap();
                let spins = potts_sigma_matrix(g, &params, &limits()).unwrap();
                let lambda = IntensityVector::uniform(lam, g.edge_count()).unwrap();
                for (x, y) in pairs(g.vertex_count()) {
                    let r = sigma_flow_ratio_exact(g, &lambda, q, x, y, Truncation::Target(1e-9), &limits()).unwrap();
                    let gap = (r.value - spins[x][y]).abs();
                    cases += 1;
                    worst_bound = worst_bound.max(r.bound);
                    worst_excess = worst_excess.max(gap - r.bound);
                    // 1e-12 covers rounding in the floating-point spin sum.
                    if !r.certified || r.bound > 1e-8 || gap > r.bound + 1e-12 {
                        bad += 1;
                    }
                }
            }
        }
    }
    outcome(
        bad == 0,
        format!(
            "flow ratio vs spins: {} graphs, {cases} pairs, {bad} failures, max bound {worst_bound:.2e} (limit 1e-8), \
             max |gap|-bound {worst_excess:.2e} (float slack 1e-12), {:.1}s",
            graphs.len(),
            start.elapsed().as_secs_f64()
        ),
    )
}

fn ac4_parity_routes() -> Outcome {
    let graphs = loopless_small(5);
    let (mut cases, mut worst) = (0, 0.0f64);
    for g in &graphs {
        for lam in LAMBDAS {
            let spins = potts_sigma_matrix(g, &PottsParams::uniform(2, lam, g.edge_count()).unwrap(), &limits()).unwrap();
            let lambda = IntensityVector::uniform(lam, g.edge_count()).unwrap();
            for (x, y) in pairs(g.vertex_count()) {
                let a = even_ratio_sigma(g, &lambda, x, y, &limits()).unwrap();
                let b = sigma_source_ratio(g, &lambda, x, y, &limits()).unwrap();
                cases += 1;
                worst = worst.max((a - b).abs()).max((a - spins[x][y]).abs()).max((b - spins[x][y]).abs());
            }
        }
    }
    outcome(
        worst <= 1e-12,
        format!("q=2 parity routes: {} graphs, {cases} pairs, max deviation {worst:.2e} (limit 1e-12)", graphs.len()),
    )
}

fn ac5_partition_and_theorem2() -> Outcome {
    let start = Instant::now();
    let graphs = loopless_small(4);
    let target = Truncation::Target(1e-10);
    let (mut checks, mut bad) = (0, 0);
    for g in &graphs {
        for q in 2..=4 {
            for lam in LAMBDAS {
                let lambda = IntensityVector::uniform(lam, g.edge_count()).unwrap();
                let c = verify_partition_identity(g, &lambda, q, target, &limits()).unwrap();
                checks += 1;
                bad += !c.passes() as usize;
            }
            for p in [0.25, 0.5, 2.0 / 3.0] {
                let c = verify_compflow(g, p, q, target, &limits()).unwrap();
                checks += 1;
                bad += !c.passes() as usize;
            }
        }
        for p in [0.25, 0.5, 2.0 / 3.0] {
            let c = verify_curiosity(g, p, &limits()).unwrap();
            checks += 1;
            bad += !c.passes() as usize;
        }
    }
    let all = standard_catalogue();
    let mut exact_cases = 0;
    let mut exact_bad = 0;
    for g in &all {
        for p in [ratio(1, 4), ratio(1, 2), ratio(2, 3)] {
            exact_cases += 1;
            if !verify_even_open_identity(g, &p, &limits()).unwrap().is_zero() {
                exact_bad += 1;
            }
        }
    }
    outcome(
        bad == 0 && exact_bad == 0,
        format!(
            "partition and complement-flow identities: {checks} bounded checks, {bad} failures; \
             even-open identity {exact_cases} exact cases, {exact_bad} unequal; {:.1}s",
            start.elapsed().as_secs_f64()
        ),
    )
}

fn ac6_corrconn_and_rc_whitney() -> Outcome {
    let loopless: Vec<Multigraph> = standard_catalogue().into_iter().filter(|g| !g.has_loops()).collect();
    let (mut exact_cases, mut exact_bad, mut worst_float) = (0, 0, 0.0f64);
    for (i, g) in loopless.iter().enumerate() {
        let p: Vec<ExactScalar> = (0..g.edge_count()).map(|e| ratio(1 + ((i + e) % 7) as i64, 9)).collect();
        for q in 2..=3 {
            exact_cases += 1;
            if !verify_corrconn_exact(g, q, &p, &limits()).unwrap().worst.is_zero() {
                exact_bad += 1;
            }
            for lam in LAMBDAS {
                let params = PottsParams::uniform(q, lam, g.edge_count()).unwrap();
                worst_float = worst_float.max(verify_corrconn(g, &params, &limits()).unwrap().worst);
            }
        }
    }
    for g in &standard_catalogue() {
        for (p, q) in [(ratio(1, 3), exact(2)), (ratio(1, 2), ratio(3, 2)), (ratio(3, 4), exact(4))] {
            exact_cases += 1;
            if !verify_rc_whitney(g, &p, &q, &limits()).unwrap().is_zero() {
                exact_bad += 1;
            }
        }
        for (p, q) in [(0.3, 2.0), (0.55, 1.5), (0.8, 3.5)] {
            worst_float = worst_float.max(verify_rc_whitney_f64(g, p, q, &limits()).unwrap());
        }
    }
    outcome(
        exact_bad == 0 && worst_float <= 1e-12,
        format!(
            "correlation-connection and RC-Whitney: {exact_cases} exact cases, {exact_bad} unequal; \
             max float deviation {worst_float:.2e} (limit 1e-12)"
        ),
    )
}

fn ac7_switching_exhaustive() -> Outcome {
    let start = Instant::now();
    let mut graphs: Vec<Multigraph> = standard_catalogue().into_iter().filter(|g| g.edge_count() <= 5).collect();
    graphs.dedup();
    let (mut instances, mut bad) = (0u64, 0u64);
    for g in &graphs {
        let n = g.vertex_count();
        for m in Multiplicities::all_bounded(g.edge_count(), 12).filter(|m| m.total() <= 12) {
            let table = SwitchingTable::new(g, &m, &limits()).unwrap();
            for (x, y) in pairs(n) {
                if !g.connected_in(&m, x, y).unwrap() {
                    continue;
                }
                for mask in 0..1u64 << n {
                    let c = table.counts(x, y, &VertexSet::from_mask(mask));
                    instances += 1;
                    bad += (c.lhs != c.rhs) as u64;
                }
            }
        }
    }
    outcome(
        bad == 0,
        format!(
            "switching lemma, fixed labelling: {} graphs, {instances} instances with sum(m) <= 12, {bad} exceptions, {:.1}s",
            graphs.len(),
            start.elapsed().as_secs_f64()
        ),
    )
}

fn ac8_correlation_products() -> Outcome {
    let m = 24;
    let graphs = [Multigraph::k2(), Multigraph::path(3).unwrap(), Multigraph::triangle()];
    let (mut cases, mut bad, mut worst) = (0, 0, 0.0f64);
    for g in &graphs {
        let n = g.vertex_count();
        for lam in [0.3, 0.5] {
            let lambda = IntensityVector::uniform(lam, g.edge_count()).unwrap();
            for x in 0..n {
                for y in 0..n {
                    if x == y {
                        continue;
                    }
                    let c = appls_identity_i(g, &lambda, x, y, m, &limits()).unwrap();
                    cases += 1;
                    bad += !c.passes() as usize;
                    worst = worst.max(c.discrepancy());
                    for z in (0..n).filter(|&z| z != x && z != y) {
                        let c = appls_identity_ii(g, &lambda, x, y, z, m, &limits()).unwrap();
                        cases += 1;
                        bad += !c.passes() as usize;
                        worst = worst.max(c.discrepancy());
                    }
                }
            }
        }
    }
    outcome(
        bad == 0,
        format!("correlation products (i)/(ii): {cases} cases at M={m}, {bad} outside bound, max |lhs-rhs| {worst:.2e}"),
    )
}

fn ac9_simon() -> Outcome {
    let mut instances: Vec<(Multigraph, usize, usize, VertexSet, bool)> = Vec::new();
    for n in 3..=6 {
        let path = Multigraph::path(n).unwrap();
        for w in 1..n - 1 {
            instances.push((path.clone(), 0, n - 1, VertexSet::new([w]), true));
        }
    }
    instances.push((Multigraph::ladder(3).unwrap(), 0, 2, VertexSet::new([1, 4]), false));
    instances.push((Multigraph::ladder(3).unwrap(), 3, 5, VertexSet::new([1, 4]), false));
    instances.push((Multigraph::cycle(4).unwrap(), 0, 2, VertexSet::new([1, 3]), false));
    instances.push((Multigraph::cycle(6).unwrap(), 0, 3, VertexSet::new([1, 5]), false));
    instances.push((Multigraph::new(5, [(0, 1), (0, 2), (1, 3), (2, 3), (1, 2), (3, 4)]).unwrap(), 0, 4, VertexSet::new([3]), false));
    instances.push((Multigraph::new(4, [(0, 1), (0, 1), (1, 2), (1, 3), (2, 3)]).unwrap(), 0, 3, VertexSet::new([1]), false));
    let (mut cases, mut bad, mut min_margin, mut worst_path) = (0, 0, f64::INFINITY, 0.0f64);
    for (g, x, z, w, tight) in &instances {
        for lam in LAMBDAS {
            let lambda = IntensityVector::uniform(lam, g.edge_count()).unwrap();
            let c = simon_check(g, &lambda, *x, *z, w, &limits()).unwrap();
            cases += 1;
            min_margin = min_margin.min(c.margin);
            if c.margin < -1e-12 {
                bad += 1;
            }
            if *tight {
                worst_path = worst_path.max(c.margin.abs());
                if c.margin.abs() > 1e-12 {
                    bad += 1;
                }
            }
        }
    }
    outcome(
        bad == 0,
        format!(
            "Simon inequality: {cases} cases, min margin {min_margin:.2e} (limit -1e-12), \
             max |margin| on paths {worst_path:.2e} (limit 1e-12)"
        ),
    )
}

fn ac10_monte_carlo_calibration() -> Outcome {
    let start = Instant::now();
    let g = Multigraph::triangle();
    let lambda = IntensityVector::uniform(0.5, 3).unwrap();
    // ℙ(G_P even) is exact through edge parities.
    let odd = vec![ferroflow_core::currents::bernoulli_density(0.5).unwrap(); 3];
    let truth = source_prob(&g, &odd, &VertexSet::empty(), &limits()).unwrap();
    let series = exact_expect_flow(&g, &lambda, 2, Truncation::Target(1e-14), &limits()).unwrap();
    let mut covered = 0;
    for seed in 1..=100u64 {
        let e = expect_flow_mc(&g, &lambda, 2, 10_000, seed, &limits()).unwrap();
        if (e.mean - truth).abs() <= 3.0 * e.std_error {
            covered += 1;
        }
    }
    outcome(
        covered >= 96 && (series.value - truth).abs() <= series.tail_bound + 1e-15,
        format!(
            "Monte Carlo calibration: {covered}/100 seeds cover the exact value {truth:.12} within 3 SE (need >= 96), {:.1}s",
            start.elapsed().as_secs_f64()
        ),
    )
}

fn ac11_decay_table() -> Outcome {
    let g = Multigraph::path(6).unwrap();
    let lam = 0.5;
    let spins = potts_sigma_matrix(&g, &PottsParams::uniform(2, lam, 5).unwrap(), &limits()).unwrap();
    let lambda = IntensityVector::uniform(lam, 5).unwrap();
    let mut worst = 0.0f64;
    let mut monotone = true;
    let mut row = Vec::new();
    for k in 1..6 {
        let s = spins[0][k];
        let parity = sigma_source_ratio(&g, &lambda, 0, k, &limits()).unwrap();
        worst = worst.max((s - libm::tanh(lam).powi(k as i32)).abs()).max((parity - s).abs());
        if k > 1 && s >= spins[0][k - 1] {
            monotone = false;
        }
        row.push(format!("{s:.6}"));
    }
    outcome(
        worst <= 1e-10 && monotone,
        format!("decay on path:6: sigma(0,k) = [{}], max |sigma - tanh^k| {worst:.2e} (limit 1e-10), monotone {monotone}", row.join(", ")),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("AC-1", ac1_flow_triple_agreement),
        ("AC-2", ac2_orientation_invariance),
        ("AC-3", ac3_flow_ratio_matches_spins),
        ("AC-4", ac4_parity_routes),
        ("AC-5", ac5_partition_and_theorem2),
        ("AC-6", ac6_corrconn_and_rc_whitney),
        ("AC-7", ac7_switching_exhaustive),
        ("AC-8", ac8_correlation_products),
        ("AC-9", ac9_simon),
        ("AC-10", ac10_monte_carlo_calibration),
        ("AC-11", ac11_decay_table),
    ];
    let mut failed = 0;
    for (id, run) in criteria {
        let o = run();
        println!("[{}] {id} {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += !o.pass as usize;
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
