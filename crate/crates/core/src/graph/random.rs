//! Seeded random multigraphs for property tests and verification catalogues.

use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Multigraph;

fn below(rng: &mut impl RngCore, n: usize) -> usize {
    (rng.next_u64() % n as u64) as usize
}

/// A connected multigraph on `vertices` vertices with exactly `edges` edges
/// (`edges ≥ vertices − 1`): a random spanning tree plus random extra edges.
/// Extra edges may be parallel; they are loops only when `loops` is set.
/// Every edge gets a random orientation.
pub fn connected_multigraph(
    rng: &mut impl RngCore,
    vertices: usize,
    edges: usize,
    loops: bool,
) -> Multigraph {
    assert!(vertices > 0 && edges + 1 >= vertices);
    assert!(loops || vertices > 1 || edges == 0);
    let mut list = Vec::with_capacity(edges);
    for v in 1..vertices {
        list.push((below(rng, v), v));
    }
    while list.len() < edges {
        let a = below(rng, vertices);
        let b = below(rng, vertices);
        if a == b && !loops {
            continue;
        }
        list.push((a, b));
    }
    // Shuffle edge order (Fisher–Yates) and orientations.
    for i in (1..list.len()).rev() {
        let j = below(rng, i + 1);
        list.swap(i, j);
    }
    for e in &mut list {
        if rng.next_u64() & 1 == 1 {
            *e = (e.1, e.0);
        }
    }
    Multigraph { vertex_count: vertices, edges: list }
}

/// Deterministic catalogue of connected multigraphs: the small built-ins
/// followed by `random` seeded draws with `1..=max_vertices` vertices and
/// at most `max_edges` edges. Roughly a third of the random draws carry
/// loops.
pub fn catalogue(seed: u64, random: usize, max_vertices: usize, max_edges: usize) -> Vec<Multigraph> {
    let mut out: Vec<Multigraph> = [
        Multigraph::k2(),
        Multigraph::digon(),
        Multigraph::triangle(),
        Multigraph::k4(),
    ]
    .into_iter()
    .chain([3, 4].into_iter().filter_map(|n| Multigraph::path(n).ok()))
    .chain([1, 2, 4].into_iter().filter_map(|n| Multigraph::cycle(n).ok()))
    .chain(Multigraph::ladder(2).ok())
    .filter(|g| g.edge_count() <= max_edges && g.vertex_count() <= max_vertices)
    .collect();
    out.extend(random_catalogue(seed, random, max_vertices, max_edges));
    out
}

/// The seeded part of [`catalogue`] on its own. Draws whose vertex count
/// cannot be spanned within `max_edges` are skipped, so fewer than `count`
/// graphs may come back.
pub fn random_catalogue(seed: u64, count: usize, max_vertices: usize, max_edges: usize) -> Vec<Multigraph> {
    let mut out = Vec::new();
    if max_vertices == 0 {
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..count {
        let n = 1 + below(&mut rng, max_vertices);
        let min_e = n - 1;
        if min_e > max_edges {
            continue;
        }
        let loops = i % 3 == 0;
        let lo = if n == 1 && !loops { 0 } else { min_e };
        let hi = if n == 1 && !loops { 0 } else { max_edges };
        let e = lo + below(&mut rng, hi - lo + 1);
        out.push(connected_multigraph(&mut rng, n, e, loops));
    }
    out
}

/// The catalogue used by the verification suites: 240 random connected
/// multigraphs on up to 5 vertices with at most 8 edges, plus built-ins.
pub fn standard_catalogue() -> Vec<Multigraph> {
    catalogue(0x5EED_F10E, 240, 5, 8)
}
