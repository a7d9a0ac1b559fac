//! Seeded inputs shared by the benches.

use orthovis::generators::{gen_histogram, gen_iup, random_histogram_params};
use orthovis::geometry::compute_visibility_graph;
use orthovis::{IupParams, VisGraph};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Visibility graph with labels shuffled by `seed`.
pub fn shuffled(g: &VisGraph, seed: u64) -> VisGraph {
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    g.relabeled(&perm).expect("a permutation")
}

pub fn iup_graph(s: usize, l: usize) -> VisGraph {
    let gt = gen_iup(IupParams { s, l }).expect("irregular parameters");
    shuffled(&compute_visibility_graph(&gt.polygon), (s * 100 + l) as u64)
}

/// `count` histograms with `k` peaks, heights up to 8, at most 120 vertices.
pub fn histogram_graphs(k: usize, count: usize, seed: u64) -> Vec<VisGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let p = random_histogram_params(&mut rng, k, 8, 120);
            let gt = gen_histogram(&p).expect("valid parameters");
            shuffled(&compute_visibility_graph(&gt.polygon), seed ^ i as u64)
        })
        .collect()
}
