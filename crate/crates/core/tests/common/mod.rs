//! Test-side oracles, written without the library's geometry code.
#![allow(dead_code)]

use orthovis::{LabeledReconstruction, LatticePoint, LatticePolygon, VisGraph};
use rand::seq::SliceRandom;
use rand::Rng;

/// Even-odd test for the centre of cell `(cx, cy)`; centres never lie on the boundary.
pub fn cell_filled(poly: &LatticePolygon, cx: i64, cy: i64) -> bool {
    // Doubled coordinates: the centre is (2cx + 1, 2cy + 1).
    let (px, py) = (2 * cx + 1, 2 * cy + 1);
    let mut inside = false;
    for i in 0..poly.len() {
        let (a, b) = poly.edge(i);
        if a.x != b.x {
            continue;
        }
        let x = 2 * a.x as i64;
        let (lo, hi) = (2 * a.y.min(b.y) as i64, 2 * a.y.max(b.y) as i64);
        if x > px && lo < py && py < hi {
            inside = !inside;
        }
    }
    inside
}

/// Cells whose closure holds the point `num / den`, one axis.
fn cells_at(num: i64, den: i64) -> Vec<i64> {
    let f = num.div_euclid(den);
    if num.rem_euclid(den) == 0 {
        vec![f - 1, f]
    } else {
        vec![f]
    }
}

/// Segment `a b` lies in the closed polygon. The segment is cut at every
/// grid line; each piece sits in a fixed set of closed cells, so its midpoint decides.
pub fn segment_inside(poly: &LatticePolygon, a: LatticePoint, b: LatticePoint) -> bool {
    let (dx, dy) = ((b.x - a.x) as i64, (b.y - a.y) as i64);
    let (ax, ay) = (a.x as i64, a.y as i64);
    let den = 2 * dx.abs().max(1) * dy.abs().max(1);
    // Cut parameters as multiples of 1/den.
    let mut cuts = vec![0, den];
    for i in 1..dx.abs() {
        cuts.push(den * i / dx.abs());
    }
    for j in 1..dy.abs() {
        cuts.push(den * j / dy.abs());
    }
    cuts.sort_unstable();
    cuts.dedup();
    cuts.windows(2).all(|w| {
        let t2 = w[0] + w[1]; // twice the midpoint parameter, over den
        let (xn, yn) = (2 * ax * den + t2 * dx, 2 * ay * den + t2 * dy);
        let d = 2 * den;
        cells_at(xn, d).iter().any(|&cx| cells_at(yn, d).iter().any(|&cy| cell_filled(poly, cx, cy)))
    })
}

pub fn cell_visibility_graph(poly: &LatticePolygon) -> VisGraph {
    let n = poly.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if segment_inside(poly, poly.vertex(i), poly.vertex(j)) {
                edges.push((i, j));
            }
        }
    }
    VisGraph::from_edges(n, &edges).unwrap()
}

/// Maximal cliques by plain Bron–Kerbosch without pivoting.
pub fn plain_maximal_cliques(g: &VisGraph) -> Vec<Vec<usize>> {
    fn go(g: &VisGraph, r: &mut Vec<usize>, p: Vec<usize>, mut x: Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if p.is_empty() && x.is_empty() {
            let mut c = r.clone();
            c.sort_unstable();
            out.push(c);
            return;
        }
        let mut p = p;
        while let Some(v) = p.pop() {
            r.push(v);
            let keep = |s: &[usize]| s.iter().copied().filter(|&w| g.has_edge(v, w)).collect::<Vec<_>>();
            go(g, r, keep(&p), keep(&x), out);
            r.pop();
            x.push(v);
        }
    }
    let mut out = Vec::new();
    go(g, &mut Vec::new(), (0..g.n()).collect(), Vec::new(), &mut out);
    out.sort();
    out
}

/// Random relabeling; returns the new graph and `perm` with `new = perm[old]`.
pub fn shuffled<R: Rng>(g: &VisGraph, rng: &mut R) -> (VisGraph, Vec<usize>) {
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(rng);
    (g.relabeled(&perm).unwrap(), perm)
}

/// Label map check against the cell oracle.
pub fn oracle_accepts(g: &VisGraph, rec: &LabeledReconstruction) -> bool {
    let Some(map) = rec.vertex_of_label() else { return false };
    let h = cell_visibility_graph(&rec.polygon);
    g.n() == h.n() && g.edge_count() == h.edge_count() && g.edges().iter().all(|&(u, v)| h.has_edge(map[u], map[v]))
}

/// Degree multiset of a `k`-level double staircase: tabs `k+2`, base `3k`,
/// and per side and level `l < k` a top of degree `l+4` and a bottom of `3k-l+2`.
pub fn double_staircase_law(k: usize) -> Vec<usize> {
    let mut d = Vec::new();
    for _side in 0..2 {
        d.push(k + 2);
        d.push(3 * k);
        for l in 1..k {
            d.push(l + 4);
            d.push(3 * k - l + 2);
        }
    }
    d.sort_unstable();
    d
}

pub fn unordered(pairs: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut v: Vec<_> = pairs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    v.sort_unstable();
    v
}

pub fn plus_sign() -> LatticePolygon {
    let pts = [(1, 0), (2, 0), (2, 1), (3, 1), (3, 2), (2, 2), (2, 3), (1, 3), (1, 2), (0, 2), (0, 1), (1, 1)];
    // Clockwise: reverse the counter-clockwise listing.
    let v: Vec<LatticePoint> = pts.iter().rev().map(|&p| p.into()).collect();
    LatticePolygon::new(v, orthovis::PolygonClass::Generic).unwrap()
}
