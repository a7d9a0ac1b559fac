//! Linear-scale reconstruction of double staircases from vertex degrees.

use std::collections::HashMap;

use crate::generators::gen_double_staircase;
use crate::geometry::LatticePoint;
use crate::graph::VisGraph;
use crate::reconstruction::LabeledReconstruction;

use super::HistogramError;

fn err(msg: impl Into<String>) -> HistogramError {
    HistogramError::NotDoubleStaircase(msg.into())
}

/// Degree multiset of the double staircase with `k` rectangles.
pub fn double_staircase_degrees(k: usize) -> Vec<usize> {
    let mut d = vec![k + 2, k + 2, 3 * k, 3 * k];
    for l in 1..k {
        d.extend([l + 4, l + 4, 3 * k - l + 2, 3 * k - l + 2]);
    }
    d.sort_unstable();
    d
}

/// Splits `pair` into (left, right): the left member is the one adjacent to
/// `witness`. Members with identical neighborhoods go lowest label left.
fn split(g: &VisGraph, pair: [usize; 2], witness: usize) -> Result<(usize, usize), HistogramError> {
    let [a, b] = pair;
    match (g.has_edge(a, witness), g.has_edge(b, witness)) {
        (true, false) => Ok((a, b)),
        (false, true) => Ok((b, a)),
        _ => {
            let strip = |v: usize, other: usize| -> Vec<usize> { g.neighbors(v).iter().copied().filter(|&w| w != other).collect() };
            if strip(a, b) == strip(b, a) {
                Ok((a.min(b), a.max(b)))
            } else {
                Err(err(format!("cannot tell left from right for {a} and {b}")))
            }
        }
    }
}

/// Reconstructs a double staircase from its vertex degrees alone.
pub fn reconstruct_double_staircase(g: &VisGraph) -> Result<LabeledReconstruction, HistogramError> {
    let n = g.n();
    if n == 0 || n % 4 != 0 {
        return Err(err(format!("{n} vertices is not a multiple of four")));
    }
    let k = n / 4;
    if g.degree_multiset() != double_staircase_degrees(k) {
        return Err(err("degree multiset does not match"));
    }
    let template = gen_double_staircase(k).map_err(|e| err(e.to_string()))?;
    if k == 1 {
        let cycle: Vec<usize> = (0..4).collect();
        return LabeledReconstruction::from_cycle(&cycle, template.polygon.vertices(), template.polygon.class())
            .map_err(|e| err(e.to_string()));
    }

    let mut by_degree: HashMap<usize, Vec<usize>> = HashMap::new();
    for v in 0..n {
        by_degree.entry(g.degree(v)).or_default().push(v);
    }
    let class = |d: usize| by_degree.get(&d).cloned().unwrap_or_default();
    let pair = |v: Vec<usize>| -> Result<[usize; 2], HistogramError> {
        v.try_into().map_err(|v: Vec<usize>| err(format!("expected a pair, found {} labels", v.len())))
    };

    // Tabs share the degree of the level k-2 tops; only the tab pair has exactly two common neighbors.
    let tab_class = class(k + 2);
    let tabs: Vec<[usize; 2]> = tab_class
        .iter()
        .flat_map(|&a| tab_class.iter().map(move |&b| (a, b)))
        .filter(|&(a, b)| a < b && g.has_edge(a, b))
        .filter(|&(a, b)| g.neighbors(a).iter().filter(|&&w| g.has_edge(b, w)).count() == 2)
        .map(|(a, b)| [a, b])
        .collect();
    let [tab] = tabs[..] else {
        return Err(err(format!("{} candidate tab pairs", tabs.len())));
    };
    let top_at = |l: usize| -> Result<[usize; 2], HistogramError> {
        if l == k {
            return Ok(tab);
        }
        pair(class(l + 4).into_iter().filter(|v| !tab.contains(v)).collect())
    };

    // Bases share the degree of the level-2 bottoms; bases see both level-1 tops.
    let t1 = top_at(1)?;
    let base_class = class(3 * k);
    let bases: Vec<usize> = base_class.iter().copied().filter(|&v| t1.iter().all(|&t| g.has_edge(v, t))).collect();
    let base = pair(bases)?;
    let bottom_at = |l: usize| -> Result<[usize; 2], HistogramError> {
        if l == 0 {
            return Ok(base);
        }
        pair(class(3 * k + 2 - l).into_iter().filter(|v| !base.contains(v)).collect())
    };

    let (base_left, base_right) = (base[0].min(base[1]), base[0].max(base[1]));
    let (_, tab_right) = split(g, tab, base_right)?;
    let width = 2 * k as i32 - 1;
    let mut coord_of = vec![LatticePoint::new(0, 0); n];
    coord_of[base_left] = LatticePoint::new(0, 0);
    coord_of[base_right] = LatticePoint::new(width, 0);
    for l in 1..=k {
        let y = l as i32;
        let (tl, tr) = split(g, top_at(l)?, base_right)?;
        coord_of[tl] = LatticePoint::new(y - 1, y);
        coord_of[tr] = LatticePoint::new(width - (y - 1), y);
        if l < k {
            let (bl, br) = split(g, bottom_at(l)?, tab_right)?;
            coord_of[bl] = LatticePoint::new(y, y);
            coord_of[br] = LatticePoint::new(width - y, y);
        }
    }
    let index: HashMap<LatticePoint, usize> = template.polygon.vertices().iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut cycle = vec![usize::MAX; n];
    for (label, p) in coord_of.iter().enumerate() {
        let i = *index.get(p).ok_or_else(|| err(format!("label {label} placed off the polygon")))?;
        if cycle[i] != usize::MAX {
            return Err(err(format!("two labels placed at {p:?}")));
        }
        cycle[i] = label;
    }
    LabeledReconstruction::from_cycle(&cycle, template.polygon.vertices(), template.polygon.class()).map_err(|e| err(e.to_string()))
}
