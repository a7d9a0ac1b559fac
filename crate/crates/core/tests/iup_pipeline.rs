mod common;

use std::time::{Duration, Instant};

use common::*;
use orthovis::generators::*;
use orthovis::geometry::compute_visibility_graph;
use orthovis::iup::*;
use orthovis::{HistogramParams, IupParams, VisGraph};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn iup(s: usize, l: usize) -> (GroundTruth, VisGraph) {
    let gt = gen_iup(IupParams { s, l }).unwrap();
    let g = compute_visibility_graph(&gt.polygon);
    (gt, g)
}

#[test]
fn convex_partition_matches_geometry() {
    let (gt, g) = iup(1, 2);
    let part = classify_convex_reflex(&g);
    assert_eq!(part.convex, gt.convex_labels);
    assert_eq!(part.convex.len(), 10);
    let (gt, g) = iup(2, 3);
    let part = classify_convex_reflex(&g);
    assert_eq!(part.convex, gt.convex_labels);
    assert_eq!(part.reflex, gt.reflex_labels);
    assert_eq!(part.convex.len(), 4 + 2 * (2 + 3));
}

#[test]
fn complete_graph_is_all_convex_and_rejected() {
    let g = VisGraph::complete(16);
    assert_eq!(classify_convex_reflex(&g).convex.len(), 16);
    assert!(matches!(reconstruct_iup(&g), Err(IupError::NotIup(_))));
}

#[test]
fn tabs_match_ground_truth() {
    for (s, l) in [(1, 2), (2, 1), (2, 3), (4, 1)] {
        let (gt, g) = iup(s, l);
        let t = find_tabs(&g, &classify_convex_reflex(&g)).unwrap();
        let found: Vec<(usize, usize)> = t.all().iter().map(|t| (t.long, t.short)).collect();
        assert_eq!(unordered(&found), unordered(&gt.tabs));
    }
}

#[test]
fn tab_finding_rejects_other_classes() {
    let g = compute_visibility_graph(&gen_regular_up(2).unwrap().polygon);
    assert!(matches!(find_tabs(&g, &classify_convex_reflex(&g)), Err(IupError::Tab(_))));
    let h = gen_histogram(&HistogramParams { peaks: vec![3, 4], valleys: vec![2] }).unwrap();
    let g = compute_visibility_graph(&h.polygon);
    assert!(find_tabs(&g, &classify_convex_reflex(&g)).is_err());
    assert!(matches!(reconstruct_iup(&g), Err(IupError::NotIup(_))));
}

#[test]
fn regular_ups_are_rejected() {
    for t in 1..=4 {
        let g = compute_visibility_graph(&gen_regular_up(t).unwrap().polygon);
        assert!(reconstruct_iup(&g).is_err(), "t = {t}");
    }
}

#[test]
fn chain_runs_from_north_to_west() {
    for (s, l) in [(1, 2), (2, 3), (3, 1), (4, 2)] {
        let (_, g) = iup(s, l);
        let part = classify_convex_reflex(&g);
        let tabs = find_tabs(&g, &part).unwrap();
        let (chain, tabs) = elementary_cliques_nw(&g, &part, &tabs).unwrap();
        // The recovered north-west staircase is a short one, whichever way the polygon was drawn.
        assert_eq!(chain.len(), s.min(l) + 1, "s={s} l={l}");
        assert_eq!(chain[0], tabs.north.clique);
        let last = chain.last().unwrap();
        let others = tabs.all().iter().filter(|t| t.pair() != tabs.north.pair()).filter(|t| last.contains(&t.long) && last.contains(&t.short)).count();
        assert_eq!(others, 1);
        assert!(last.contains(&tabs.west.long) && last.contains(&tabs.west.short));
    }
}

#[test]
fn convex_orders_have_staircase_sizes() {
    for (s, l) in [(1, 2), (2, 3), (5, 2)] {
        let (_, g) = iup(s, l);
        let part = classify_convex_reflex(&g);
        let tabs = find_tabs(&g, &part).unwrap();
        let (chain, tabs) = elementary_cliques_nw(&g, &part, &tabs).unwrap();
        let o = assign_convex_vertices(&g, &part, &tabs, &chain).unwrap();
        let (short, long) = (s.min(l), s.max(l));
        // Orders include the tab vertex at each end.
        assert_eq!(o.northwest.len() - 2, short - 1);
        assert_eq!(o.southeast.len() - 2, short - 1);
        assert_eq!(o.northeast.len() - 2, long - 1);
        assert_eq!(o.southwest.len() - 2, long - 1);
    }
}

#[test]
fn reflex_assignment_completes_the_cycle() {
    let (gt, g) = iup(2, 3);
    let part = classify_convex_reflex(&g);
    let tabs = find_tabs(&g, &part).unwrap();
    let (chain, tabs) = elementary_cliques_nw(&g, &part, &tabs).unwrap();
    let seed = reflex_seed(&g, &part, &tabs);
    assert_eq!(seed.len(), 2 + 2);
    assert!(seed.iter().all(|v| gt.reflex_labels.contains(v)));
    let o = assign_convex_vertices(&g, &part, &tabs, &chain).unwrap();
    let a = assign_reflex_vertices(&g, &part, &o).unwrap();
    assert_eq!(a.cycle.len(), 24);
    let mut sorted = a.cycle.clone();
    sorted.sort_unstable();
    assert_eq!(sorted, (0..24).collect::<Vec<_>>());
    assert_eq!(gt.reflex_labels.len(), 2 * 2 + 2 * 3);
}

#[test]
fn twin_reflex_labels_are_interchangeable() {
    let (_, g) = iup(2, 5);
    let n = g.n();
    let strip = |v: usize, w: usize| -> Vec<usize> { g.neighbors(v).iter().copied().filter(|&x| x != w).collect() };
    let twins: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| strip(a, b) == strip(b, a)).collect();
    for (a, b) in twins {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(a, b);
        let h = g.relabeled(&perm).unwrap();
        assert_eq!(h, g);
        assert!(reconstruct_iup(&h).unwrap().verify(&h));
    }
}

#[test]
fn small_cases_use_the_exhaustive_path() {
    // Every IUP has at least 16 vertices, so below the pipeline threshold nothing is accepted.
    assert!(MIN_PIPELINE_VERTICES <= 16);
    for n in 4..MIN_PIPELINE_VERTICES {
        assert!(reconstruct_iup(&VisGraph::cycle(n)).is_err());
        assert!(reconstruct_iup(&VisGraph::complete(n)).is_err());
    }
}

#[test]
fn classification_grows_at_most_cubically() {
    let time = |s: usize, l: usize| -> Duration {
        let (_, g) = iup(s, l);
        (0..5)
            .map(|_| {
                let t = Instant::now();
                std::hint::black_box(classify_convex_reflex(&g));
                t.elapsed()
            })
            .min()
            .unwrap()
    };
    let (small, large) = (time(1, 2), time(5, 7));
    let ratio = large.as_secs_f64() / small.as_secs_f64().max(1e-9);
    let cubic = (52.0f64 / 16.0).powi(3);
    assert!(ratio < 8.0 * cubic, "ratio {ratio:.1} against cubic {cubic:.1}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn round_trip_under_relabeling(s in 1usize..=7, l in 1usize..=7, seed in any::<u64>()) {
        prop_assume!(s != l);
        let (gt, g) = iup(s, l);
        let (g, perm) = shuffled(&g, &mut ChaCha8Rng::seed_from_u64(seed));
        let part = classify_convex_reflex(&g);
        let mut truth: Vec<usize> = gt.convex_labels.iter().map(|&v| perm[v]).collect();
        truth.sort_unstable();
        prop_assert_eq!(&part.convex, &truth);
        let r = reconstruct_iup(&g).unwrap();
        prop_assert!(r.verify(&g));
        prop_assert!(oracle_accepts(&g, &r));
        prop_assert_eq!(r.polygon.len(), gt.polygon.len());
    }
}
