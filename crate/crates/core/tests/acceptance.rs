//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use common::*;
use orthovis::generators::*;
use orthovis::geometry::compute_visibility_graph;
use orthovis::graph::{brute_force_maximal_cliques, is_one_simplicial_in_k_clique, one_simplicial_clique};
use orthovis::histogram::{find_initial_tabs, reconstruct_histogram, reconstruct_histogram_counted};
use orthovis::iup::{classify_convex_reflex, find_tabs};
use orthovis::{recognize, reconstruct_double_staircase, reconstruct_iup, PolygonClass, VisGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: &[String], detail: String) -> Outcome {
    let mut detail = detail;
    if let Some(first) = failures.first() {
        detail.push_str(&format!("; {} failures, first: {first}", failures.len()));
    }
    Outcome { pass: failures.is_empty(), detail }
}

/// An instance of the sweep: relabeled graph, relabeling, ground truth.
struct Instance {
    graph: VisGraph,
    perm: Vec<usize>,
    truth: GroundTruth,
}

fn instance(truth: GroundTruth, rng: &mut ChaCha8Rng) -> Instance {
    let (graph, perm) = shuffled(&compute_visibility_graph(&truth.polygon), rng);
    Instance { graph, perm, truth }
}

fn iup_sweep() -> Vec<(IupParams, Instance)> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut out = Vec::new();
    for s in 1..=11 {
        for l in 1..=12 - s {
            if s != l {
                let p = IupParams { s, l };
                out.push((p, instance(gen_iup(p).unwrap(), &mut rng)));
            }
        }
    }
    out
}

fn histogram_sweep() -> Vec<(usize, HistogramParams, Instance)> {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut out = Vec::new();
    for k in 1..=5 {
        for _ in 0..100 {
            let p = random_histogram_params(&mut rng, k, 8, 120);
            let gt = gen_histogram(&p).unwrap();
            out.push((k, p, instance(gt, &mut rng)));
        }
    }
    out
}

fn factorial_bound(k: usize) -> usize {
    let f: usize = (1..=k - 2).product();
    f << (k - 2)
}

fn c1_iup_round_trip(sweep: &[(IupParams, Instance)]) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (p, inst) in sweep {
        match reconstruct_iup(&inst.graph) {
            Ok(r) if r.verify(&inst.graph) && oracle_accepts(&inst.graph, &r) => {}
            Ok(_) => failures.push(format!("{p:?}: reconstruction does not verify")),
            Err(e) => failures.push(format!("{p:?}: {e}")),
        }
    }
    let took = start.elapsed();
    if took > Duration::from_secs(30) {
        failures.push(format!("took {took:.2?}, budget 30 s"));
    }
    outcome(&failures, format!("{} instances, s+l <= 12, {took:.2?}", sweep.len()))
}

fn c2_histogram_round_trip(sweep: &[(usize, HistogramParams, Instance)]) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (_, p, inst) in sweep {
        match reconstruct_histogram(&inst.graph) {
            Ok(r) if r.verify(&inst.graph) && oracle_accepts(&inst.graph, &r) => {}
            Ok(_) => failures.push(format!("{p:?}: reconstruction does not verify")),
            Err(e) => failures.push(format!("{p:?}: {e}")),
        }
    }
    let took = start.elapsed();
    if took > Duration::from_secs(120) {
        failures.push(format!("took {took:.2?}, budget 120 s"));
    }
    let largest = sweep.iter().map(|(_, _, i)| i.graph.n()).max().unwrap_or(0);
    outcome(&failures, format!("{} instances, k = 1..5, largest n = {largest}, {took:.2?}", sweep.len()))
}

fn c3_c4_candidates(sweep: &[(usize, HistogramParams, Instance)]) -> (Outcome, Outcome) {
    let mut bound_failures = Vec::new();
    let mut binary_failures = Vec::new();
    let (mut binary_runs, mut most) = (0, 0);
    for (k, p, inst) in sweep {
        let r = match reconstruct_histogram_counted(&inst.graph) {
            Ok(r) => r,
            Err(e) => {
                bound_failures.push(format!("{p:?}: {e}"));
                continue;
            }
        };
        let tried = r.candidates_tried;
        most = most.max(tried);
        if *k >= 2 && tried > factorial_bound(*k) {
            bound_failures.push(format!("{p:?}: {tried} candidates, bound {}", factorial_bound(*k)));
        }
        if *k == 2 && tried != 1 {
            bound_failures.push(format!("{p:?}: k = 2 took {tried} candidates"));
        }
        let tree = inst.truth.contact_tree.as_ref().expect("histograms carry their tree");
        if tree.is_binary() {
            binary_runs += 1;
            if tried != 1 {
                binary_failures.push(format!("{p:?}: binary tree took {tried} candidates"));
            }
        }
    }
    (
        outcome(&bound_failures, format!("{} runs, most candidates in one run = {most}", sweep.len())),
        outcome(&binary_failures, format!("{binary_runs} runs with a binary contact tree")),
    )
}

fn c5_double_staircase() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut failures = Vec::new();
    let mut k20 = Duration::MAX;
    for k in 1..=20 {
        let gt = gen_double_staircase(k).unwrap();
        let g = compute_visibility_graph(&gt.polygon);
        if g.degree_multiset() != double_staircase_law(k) {
            failures.push(format!("k = {k}: degree multiset differs from the law"));
        }
        let (g, _) = shuffled(&g, &mut rng);
        for _ in 0..5 {
            let start = Instant::now();
            let r = reconstruct_double_staircase(&g);
            let took = start.elapsed();
            if k == 20 {
                k20 = k20.min(took);
            }
            match r {
                Ok(r) if r.verify(&g) => {}
                Ok(_) => failures.push(format!("k = {k}: reconstruction does not verify")),
                Err(e) => failures.push(format!("k = {k}: {e}")),
            }
        }
    }
    if k20 >= Duration::from_millis(10) {
        failures.push(format!("k = 20 took {k20:.2?}, budget 10 ms"));
    }
    failures.dedup();
    outcome(&failures, format!("k = 1..20, reconstruction at k = 20 in {k20:.2?}"))
}

/// Every generated graph with at most 24 vertices.
fn small_graphs() -> Vec<(String, GroundTruth)> {
    let mut out = Vec::new();
    for s in 1..=5 {
        for l in 1..=5 - s {
            if s != l {
                out.push((format!("iup {s},{l}"), gen_iup(IupParams { s, l }).unwrap()));
            }
        }
    }
    for t in 1..=2 {
        out.push((format!("regular-up {t}"), gen_regular_up(t).unwrap()));
    }
    for k in 1..=6 {
        out.push((format!("double staircase {k}"), gen_double_staircase(k).unwrap()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for k in 2..=4 {
        for _ in 0..40 {
            let p = random_histogram_params(&mut rng, k, 5, 24);
            out.push((format!("histogram {p:?}"), gen_histogram(&p).unwrap()));
        }
    }
    out
}

fn c6_one_simplicial() -> Outcome {
    let mut failures = Vec::new();
    let mut edges_checked = 0;
    let graphs = small_graphs();
    for (name, gt) in &graphs {
        let g = compute_visibility_graph(&gt.polygon);
        let cliques = brute_force_maximal_cliques(&g).unwrap();
        if cliques != plain_maximal_cliques(&g) {
            failures.push(format!("{name}: clique enumerations disagree"));
        }
        let mut simplicial_endpoint = vec![false; g.n()];
        for (u, v) in g.edges() {
            edges_checked += 1;
            let holding: Vec<&Vec<usize>> = cliques.iter().filter(|c| c.contains(&u) && c.contains(&v)).collect();
            let rec = one_simplicial_clique(&g, u, v).unwrap();
            let unique = (holding.len() == 1).then(|| holding[0].clone());
            if rec.as_ref().map(|r| r.clique.clone()) != unique {
                failures.push(format!("{name}: edge ({u}, {v}) disagrees"));
            }
            for k in 2..=g.n() {
                let by_k = is_one_simplicial_in_k_clique(&g, u, v, k).unwrap().is_some();
                if by_k != unique.as_ref().is_some_and(|c| c.len() == k) {
                    failures.push(format!("{name}: edge ({u}, {v}) disagrees at k = {k}"));
                }
            }
            if rec.is_some() {
                simplicial_endpoint[u] = true;
                simplicial_endpoint[v] = true;
            }
        }
        if name.starts_with("iup") {
            if gt.reflex_labels.iter().any(|&r| simplicial_endpoint[r]) {
                failures.push(format!("{name}: a reflex label ends a 1-simplicial edge"));
            }
            if gt.convex_labels.iter().any(|&c| !simplicial_endpoint[c]) {
                failures.push(format!("{name}: a convex label ends no 1-simplicial edge"));
            }
        }
    }
    outcome(&failures, format!("{} graphs, {edges_checked} edges", graphs.len()))
}

fn c7_tabs(iups: &[(IupParams, Instance)], hists: &[(usize, HistogramParams, Instance)]) -> Outcome {
    let mut failures = Vec::new();
    let mut squares = 0;
    let truth = |inst: &Instance| -> Vec<(usize, usize)> {
        unordered(&inst.truth.tabs.iter().map(|&(a, b)| (inst.perm[a], inst.perm[b])).collect::<Vec<_>>())
    };
    for (p, inst) in iups {
        let part = classify_convex_reflex(&inst.graph);
        match find_tabs(&inst.graph, &part) {
            Ok(t) => {
                let found: Vec<(usize, usize)> = t.all().iter().map(|tab| (tab.long, tab.short)).collect();
                if unordered(&found) != truth(inst) {
                    failures.push(format!("{p:?}: wrong tabs"));
                }
            }
            Err(e) => failures.push(format!("{p:?}: {e}")),
        }
    }
    for (_, p, inst) in hists {
        match find_initial_tabs(&inst.graph) {
            Ok(t) => {
                let found: Vec<(usize, usize)> = t.iter().map(|tc| tc.edge).collect();
                // In the unit square every edge is the image of the tab under a symmetry.
                if inst.graph.n() == 4 && found.len() == 1 {
                    squares += 1;
                } else if unordered(&found) != truth(inst) {
                    failures.push(format!("{p:?}: wrong tabs"));
                }
            }
            Err(e) => failures.push(format!("{p:?}: {e}")),
        }
    }
    outcome(&failures, format!("{} IUP and {} histogram instances ({squares} unit squares matched up to symmetry)", iups.len(), hists.len()))
}

fn c8_perturbations() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut failures = Vec::new();
    let (mut rejected, mut accepted_other) = (0, 0);
    let trials = 200;
    for trial in 0..trials {
        let gt = match trial % 3 {
            0 => {
                let s = rng.gen_range(1..=5);
                let l = loop {
                    let l = rng.gen_range(1..=5);
                    if l != s {
                        break l;
                    }
                };
                gen_iup(IupParams { s, l }).unwrap()
            }
            1 => gen_double_staircase(rng.gen_range(1..=8)).unwrap(),
            _ => {
                let k = rng.gen_range(2..=5);
                gen_histogram(&random_histogram_params(&mut rng, k, 6, 80)).unwrap()
            }
        };
        let (g, _) = shuffled(&compute_visibility_graph(&gt.polygon), &mut rng);
        let u = rng.gen_range(0..g.n());
        let v = loop {
            let v = rng.gen_range(0..g.n());
            if v != u {
                break v;
            }
        };
        let g = g.with_toggled_edge(u, v).unwrap();
        let r = recognize(&g, None);
        match &r.reconstruction {
            Some(rec) => {
                accepted_other += 1;
                if !oracle_accepts(&g, rec) {
                    failures.push(format!("trial {trial}: accepted a graph its polygon does not produce"));
                }
            }
            None => rejected += 1,
        }
    }
    let rate = 100.0 * rejected as f64 / trials as f64;
    outcome(&failures, format!("{trials} perturbations, {rejected} rejected ({rate:.1}%), {accepted_other} accepted and sound"))
}

fn c9_cross_class(iups: &[(IupParams, Instance)], hists: &[(usize, HistogramParams, Instance)]) -> Outcome {
    let mut failures = Vec::new();
    for (p, inst) in iups {
        for hint in [PolygonClass::Histogram, PolygonClass::DoubleStaircase] {
            if recognize(&inst.graph, Some(hint)).is_accepted() {
                failures.push(format!("{p:?} accepted as {hint}"));
            }
        }
    }
    for (_, p, inst) in hists {
        if recognize(&inst.graph, Some(PolygonClass::Iup)).is_accepted() {
            failures.push(format!("{p:?} accepted as iup"));
        }
    }
    outcome(&failures, format!("{} IUP graphs as histograms, {} histogram graphs as IUPs", iups.len(), hists.len()))
}

fn main() {
    let iups = iup_sweep();
    let hists = histogram_sweep();
    let c1 = c1_iup_round_trip(&iups);
    let c2 = c2_histogram_round_trip(&hists);
    let (c3, c4) = c3_c4_candidates(&hists);
    let results = [
        ("IUP round-trip", c1),
        ("histogram round-trip", c2),
        ("candidate bound", c3),
        ("binary fast path", c4),
        ("double staircase degree law and timing", c5_double_staircase()),
        ("1-simplicial oracle agreement", c6_one_simplicial()),
        ("tab identification", c7_tabs(&iups, &hists)),
        ("recognition soundness under perturbation", c8_perturbations()),
        ("cross-class rejection", c9_cross_class(&iups, &hists)),
    ];
    let mut all = true;
    for (i, (name, o)) in results.iter().enumerate() {
        all &= o.pass;
        println!("{} {}. {name}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    if !all {
        std::process::exit(1);
    }
}
