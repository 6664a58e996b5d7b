use ferroflow_core::currents::{sigma_source_ratio, switching_check_fixed, SwitchingTable};
use ferroflow_core::graph::random::connected_multigraph;
use ferroflow_core::graph::{Multigraph, Multiplicities, VertexSet};
use ferroflow_core::poisson::{
    even_ratio_sigma, exact_expect_flow, exact_expect_flow_enum, expect_flow_mc, verify_even_open_identity,
    IntensityVector,
};
use ferroflow_core::poly::{
    count_flows_dc, count_flows_enum, count_flows_whitney, flow_polynomial, ratio, tutte_eval_dc, tutte_eval_whitney,
    whitney_eval, whitney_eval_alt, ExactScalar,
};
use ferroflow_core::potts::{verify_corrconn_exact, verify_rc_whitney};
use ferroflow_core::Limits;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graph(seed: u64, vertices: usize, extra: usize, loops: bool) -> Multigraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let loops = loops || vertices == 1;
    connected_multigraph(&mut rng, vertices, vertices - 1 + extra, loops)
}

fn any_graph(max_vertices: usize, max_extra: usize) -> impl Strategy<Value = Multigraph> {
    (any::<u64>(), 1..=max_vertices, 0..=max_extra, any::<bool>()).prop_map(|(s, v, e, l)| graph(s, v, e, l))
}

fn loopless_graph(max_vertices: usize, max_extra: usize) -> impl Strategy<Value = Multigraph> {
    (any::<u64>(), 2..=max_vertices, 0..=max_extra).prop_map(|(s, v, e)| graph(s, v, e, false))
}

fn small_ratio() -> impl Strategy<Value = ExactScalar> {
    (1i64..=7, 1i64..=4).prop_map(|(n, d)| ratio(n * if n % 2 == 0 { -1 } else { 1 }, d))
}

fn probability() -> impl Strategy<Value = ExactScalar> {
    (0i64..9).prop_map(|n| ratio(n, 9))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_plus_corank_is_subset_size(g in any_graph(5, 5), mask in any::<u64>()) {
        let active: Vec<usize> = (0..g.edge_count()).filter(|i| mask >> i & 1 == 1).collect();
        let (r, c) = g.rank_corank(&active).unwrap();
        prop_assert_eq!(r + c, active.len());
        prop_assert!(r < g.vertex_count().max(1));
    }

    #[test]
    fn source_sets_are_even(g in any_graph(6, 5), counts in prop::collection::vec(0u32..4, 10)) {
        let m = Multiplicities::new(counts[..g.edge_count()].iter().copied());
        let s = g.source_set(&m).unwrap();
        prop_assert_eq!(s.len() % 2, 0);
        let ones = Multiplicities::new(vec![1; g.edge_count()]);
        prop_assert_eq!(g.is_even(), g.source_set(&ones).unwrap().is_empty());
        prop_assert_eq!(g.expand(&m).unwrap().is_even(), s.is_empty());
    }

    #[test]
    fn flow_counts_ignore_orientation(g in any_graph(5, 4), flips in any::<u64>(), q in 2u32..5) {
        let flip: Vec<bool> = (0..g.edge_count()).map(|i| flips >> i & 1 == 1).collect();
        let h = g.reoriented(&flip).unwrap();
        let l = Limits::default();
        prop_assert_eq!(count_flows_enum(&g, q, &l).unwrap(), count_flows_enum(&h, q, &l).unwrap());
        prop_assert_eq!(count_flows_dc(&g, q), count_flows_dc(&h, q));
    }

    #[test]
    fn three_flow_routes_agree(g in any_graph(5, 4), q in 2u32..6) {
        let l = Limits::default();
        let dc = count_flows_dc(&g, q);
        prop_assert_eq!(&dc, &count_flows_whitney(&g, q, &l).unwrap());
        prop_assert_eq!(&dc, &count_flows_enum(&g, q, &l).unwrap());
    }

    #[test]
    fn whitney_forms_agree(g in any_graph(5, 4), u in small_ratio(), v in small_ratio()) {
        let l = Limits::default();
        prop_assert_eq!(whitney_eval(&g, &u, &v, &l).unwrap(), whitney_eval_alt(&g, &u, &v, &l).unwrap());
    }

    #[test]
    fn tutte_routes_agree(g in any_graph(5, 4), u in small_ratio(), v in small_ratio()) {
        prop_assume!(u != ratio(1, 1));
        let l = Limits::default();
        prop_assert_eq!(tutte_eval_dc(&g, &u, &v), tutte_eval_whitney(&g, &u, &v, &l).unwrap());
    }

    #[test]
    fn flow_polynomial_interpolates_counts(g in any_graph(4, 4)) {
        let p = flow_polynomial(&g).unwrap();
        for q in 2u32..7 {
            prop_assert_eq!(p.eval(&BigInt::from(q)), count_flows_dc(&g, q));
        }
    }

    #[test]
    fn correlation_is_connection(g in loopless_graph(4, 3), ps in prop::collection::vec(0i64..8, 8), q in 2u32..4) {
        let p: Vec<ExactScalar> = ps[..g.edge_count()].iter().map(|&n| ratio(n, 8)).collect();
        let r = verify_corrconn_exact(&g, q, &p, &Limits::default()).unwrap();
        prop_assert!(r.worst.is_zero());
    }

    #[test]
    fn random_cluster_is_whitney(g in any_graph(5, 4), p in probability(), q in 1i64..5) {
        prop_assert!(verify_rc_whitney(&g, &p, &ratio(q, 2), &Limits::default()).unwrap().is_zero());
    }

    #[test]
    fn even_open_identity(g in any_graph(5, 4), p in probability()) {
        prop_assert!(verify_even_open_identity(&g, &p, &Limits::default()).unwrap().is_zero());
    }

    #[test]
    fn switching_counts_balance(g in any_graph(4, 3), counts in prop::collection::vec(0u32..3, 8), xs in any::<u64>()) {
        let m = Multiplicities::new(counts[..g.edge_count()].iter().copied());
        prop_assume!(g.vertex_count() >= 2);
        let n = g.vertex_count();
        let (x, y) = ((xs % n as u64) as usize, ((xs / 7) % n as u64) as usize);
        prop_assume!(x != y && g.connected_in(&m, x, y).unwrap());
        let table = SwitchingTable::new(&g, &m, &Limits::default()).unwrap();
        for mask in 0..1u64 << n {
            let a = VertexSet::from_mask(mask);
            let c = table.counts(x, y, &a);
            prop_assert_eq!(c.lhs, c.rhs);
            prop_assert_eq!(c, switching_check_fixed(&g, &m, x, y, &a, &Limits::default()).unwrap());
        }
    }

    #[test]
    fn parity_routes_agree(g in loopless_graph(5, 3), lam in 0.0f64..1.5, xs in any::<u64>()) {
        let n = g.vertex_count();
        let (x, y) = ((xs % n as u64) as usize, ((xs / 11) % n as u64) as usize);
        prop_assume!(x != y);
        let lam = IntensityVector::uniform(lam, g.edge_count()).unwrap();
        let l = Limits::default();
        let a = even_ratio_sigma(&g, &lam, x, y, &l).unwrap();
        let b = sigma_source_ratio(&g, &lam, x, y, &l).unwrap();
        prop_assert!((a - b).abs() <= 1e-13, "{} vs {}", a, b);
    }

    #[test]
    fn truncated_sum_routes_agree(g in any_graph(3, 1), lam in 0.0f64..1.0, q in 2u32..4, m in 0u32..4) {
        let lam = IntensityVector::uniform(lam, g.edge_count()).unwrap();
        let l = Limits::default();
        let a = exact_expect_flow(&g, &lam, q, m, &l).unwrap();
        let b = exact_expect_flow_enum(&g, &lam, q, m, &l).unwrap();
        prop_assert_eq!(a, b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn monte_carlo_is_reproducible(seed in any::<u64>()) {
        let g = Multigraph::triangle();
        let lam = IntensityVector::uniform(0.6, 3).unwrap();
        let l = Limits::default();
        let a = expect_flow_mc(&g, &lam, 3, 1500, seed, &l).unwrap();
        let b = expect_flow_mc(&g, &lam, 3, 1500, seed, &l).unwrap();
        prop_assert_eq!(a, b);
        prop_assert!(a.std_error >= 0.0);
    }
}
