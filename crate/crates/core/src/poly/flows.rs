use alloc::collections::BTreeMap;
use alloc::vec;

use num_bigint::BigInt;
use num_traits::Zero;

use super::reduced::{Key, Reduced};
use super::{exact, whitney_eval};
use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::limits::{self, Limits};

/// Counts non-zero mod-`q` flows by trying every assignment
/// `E → {1, …, q−1}` against the stored orientation.
pub fn count_flows_enum(g: &Multigraph, q: u32, limits: &Limits) -> Result<BigInt> {
    if q < 2 {
        return Err(Error::invalid("flow counts need q ≥ 2"));
    }
    limits::check(
        "flow assignments",
        limits::saturating_pow(q as u128, g.edge_count()),
        limits.flow_assignments,
    )?;
    let q = q as i64;
    let edges = g.edges();
    let mut value = vec![1i64; edges.len()];
    // net[v] = out − in (mod q); `unbalanced` counts vertices with net ≠ 0.
    let mut net = vec![0i64; g.vertex_count()];
    let shift = |net: &mut [i64], v: usize, d: i64, unbalanced: &mut i64| {
        let before = net[v] != 0;
        net[v] = (net[v] + d).rem_euclid(q);
        *unbalanced += (net[v] != 0) as i64 - before as i64;
    };
    let mut unbalanced = 0i64;
    for &(t, h) in edges {
        shift(&mut net, t, 1, &mut unbalanced);
        shift(&mut net, h, -1, &mut unbalanced);
    }
    let mut count: u64 = 0;
    loop {
        if unbalanced == 0 {
            count += 1;
        }
        // Odometer step over values 1..q-1.
        let mut i = 0;
        loop {
            if i == edges.len() {
                return Ok(BigInt::from(count));
            }
            let (t, h) = edges[i];
            let delta = if value[i] + 1 < q { 1 } else { 1 - value[i] };
            value[i] += delta;
            shift(&mut net, t, delta, &mut unbalanced);
            shift(&mut net, h, -delta, &mut unbalanced);
            if delta == 1 {
                break;
            }
            i += 1;
        }
    }
}

/// `(−1)^{|E|} W_G(−1, −q)`, the flow count read off the Whitney function.
pub fn count_flows_whitney(g: &Multigraph, q: u32, limits: &Limits) -> Result<BigInt> {
    let w = whitney_eval(g, &exact(-1), &exact(-(q as i64)), limits)?;
    debug_assert!(w.is_integer());
    let w = w.to_integer();
    Ok(if g.edge_count().is_multiple_of(2) { w } else { -w })
}

/// Deletion–contraction flow counter with a memo over canonicalized
/// multigraphs. One counter serves one value of `q`; it can be reused
/// across many graphs.
///
/// Rules: a loop contributes a factor `q − 1`, a bridge forces zero,
/// otherwise `C(G) = C(G/e) − C(G∖e)`. Degree-two vertices are suppressed
/// first since both edges through them carry the same value.
#[derive(Debug, Clone)]
pub struct FlowCounter {
    q: u32,
    memo: BTreeMap<Key, BigInt>,
}

impl FlowCounter {
    pub fn new(q: u32) -> Self {
        FlowCounter { q, memo: BTreeMap::new() }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn count(&mut self, g: &Multigraph) -> BigInt {
        self.count_reduced(Reduced::from_graph(g))
    }

    fn loop_factor(&self, loops: u32) -> BigInt {
        num_traits::pow(BigInt::from(self.q) - 1, loops as usize)
    }

    fn count_reduced(&mut self, mut r: Reduced) -> BigInt {
        let mut loops = 0;
        loop {
            loops += r.strip_loops();
            if r.is_empty() {
                return self.loop_factor(loops);
            }
            if r.pendant_edge().is_some() {
                return BigInt::zero();
            }
            if !r.suppress_degree_two() {
                break;
            }
        }
        let key = r.canonicalize();
        if let Some(v) = self.memo.get(&key) {
            return v * self.loop_factor(loops);
        }
        debug_assert!(!r.is_loop(0));
        let value = if r.is_bridge(0) {
            BigInt::zero()
        } else {
            self.count_reduced(r.contracted(0)) - self.count_reduced(r.deleted(0))
        };
        let out = &value * self.loop_factor(loops);
        self.memo.insert(key, value);
        out
    }
}

/// Number of non-zero mod-`q` flows by deletion–contraction. For `q ≥ 2`
/// this is the flow count; for other integers it is the flow polynomial's
/// value there.
pub fn count_flows_dc(g: &Multigraph, q: u32) -> BigInt {
    FlowCounter::new(q).count(g)
}

/// `C_G(2)`: one if every degree is even, zero otherwise.
pub fn even_flow_indicator(g: &Multigraph) -> u8 {
    g.is_even() as u8
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Multiplicities;

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn enumeration_examples() {
        let l = Limits::default();
        // A bridge can carry no non-zero conserved flow.
        assert_eq!(count_flows_enum(&Multigraph::k2(), 5, &l).unwrap(), int(0));
        let lollipop = Multigraph::new(4, [(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        assert_eq!(count_flows_enum(&lollipop, 3, &l).unwrap(), int(0));
        // 27 assignments on C3, 2 conserve.
        assert_eq!(count_flows_enum(&Multigraph::cycle(3).unwrap(), 3, &l).unwrap(), int(2));
        // Digon: f1 + f2 ≡ 0 with the same orientation; three solutions mod 4.
        assert_eq!(count_flows_enum(&Multigraph::digon(), 4, &l).unwrap(), int(3));
        assert_eq!(count_flows_enum(&Multigraph::edgeless(3).unwrap(), 2, &l).unwrap(), int(1));
    }

    #[test]
    fn enumeration_rejects_bad_input() {
        let tight = Limits { flow_assignments: 100, ..Limits::default() };
        assert!(matches!(count_flows_enum(&Multigraph::k4(), 3, &tight), Err(Error::CapExceeded { .. })));
        assert!(count_flows_enum(&Multigraph::k2(), 1, &Limits::default()).is_err());
    }

    #[test]
    fn dc_examples() {
        assert_eq!(count_flows_dc(&Multigraph::edgeless(4).unwrap(), 3), int(1));
        for n in 1..=6 {
            for q in 2..=6 {
                assert_eq!(count_flows_dc(&Multigraph::cycle(n).unwrap(), q), int(q as i64 - 1));
            }
        }
        assert_eq!(count_flows_dc(&Multigraph::k4(), 3), int(0));
        assert_eq!(count_flows_dc(&Multigraph::k4(), 4), int(6));
        assert_eq!(count_flows_dc(&Multigraph::k2(), 4), int(0));
    }

    #[test]
    fn routes_agree_on_small_graphs() {
        let l = Limits::default();
        let graphs = [
            Multigraph::k4(),
            Multigraph::ladder(3).unwrap(),
            Multigraph::new(3, [(0, 0), (0, 1), (1, 0), (1, 2), (2, 1), (2, 2)]).unwrap(),
            Multigraph::triangle().expand(&Multiplicities::new([2, 1, 3])).unwrap(),
        ];
        for g in &graphs {
            for q in 2..=4 {
                let e = count_flows_enum(g, q, &l).unwrap();
                assert_eq!(e, count_flows_dc(g, q), "{g:?} q={q}");
                assert_eq!(e, count_flows_whitney(g, q, &l).unwrap(), "{g:?} q={q}");
            }
        }
    }

    #[test]
    fn memo_is_reusable_across_graphs() {
        let mut counter = FlowCounter::new(3);
        let a = counter.count(&Multigraph::k4());
        let b = counter.count(&Multigraph::cycle(5).unwrap());
        let c = counter.count(&Multigraph::k4());
        assert_eq!((a, b, c), (int(0), int(2), int(0)));
    }

    #[test]
    fn even_indicator_examples() {
        assert_eq!(even_flow_indicator(&Multigraph::triangle()), 1);
        assert_eq!(even_flow_indicator(&Multigraph::k2()), 0);
        let g = Multigraph::triangle().expand(&Multiplicities::new([2, 1, 1])).unwrap();
        assert_eq!(g.degrees(), vec![3, 3, 2]);
        assert_eq!(even_flow_indicator(&g), 0);
        assert_eq!(BigInt::from(even_flow_indicator(&g)), count_flows_dc(&g, 2));
    }
}
