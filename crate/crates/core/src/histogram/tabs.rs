//! Initial tab identification and the top/bottom split.

use std::collections::BTreeSet;

use crate::graph::{enumerate_one_simplicial_edges, EdgeCliqueRecord, VisGraph};

use super::HistogramError;

/// A tab edge, sorted, with its maximal 4-clique.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TabClique {
    pub edge: (usize, usize),
    pub clique: Vec<usize>,
}

impl TabClique {
    /// The clique members other than the tab vertices.
    pub fn bottoms(&self) -> (usize, usize) {
        let rest: Vec<usize> = self.clique.iter().copied().filter(|&v| v != self.edge.0 && v != self.edge.1).collect();
        (rest[0], rest[1])
    }
}

/// Whether an endpoint of `e` sees exactly one member of `clique`.
fn isolates(g: &VisGraph, e: (usize, usize), clique: &[usize]) -> bool {
    if clique.contains(&e.0) || clique.contains(&e.1) {
        return false;
    }
    clique.iter().filter(|&&w| g.has_edge(e.0, w) || g.has_edge(e.1, w)).count() == 1
}

/// Drops records whose clique holds an isolated vertex. A record nothing
/// alive isolates is kept for good and its targets are dropped; records
/// that only isolate each other survive.
fn eliminate_crossing(g: &VisGraph, recs: &[EdgeCliqueRecord]) -> Vec<usize> {
    let r = recs.len();
    let mut hits = vec![Vec::new(); r];
    for (i, a) in recs.iter().enumerate() {
        for (j, b) in recs.iter().enumerate() {
            if i != j && isolates(g, a.edge, &b.clique) {
                hits[i].push(j);
            }
        }
    }
    let mut alive = vec![true; r];
    let mut sure = vec![false; r];
    loop {
        let mut attacked = vec![false; r];
        for i in (0..r).filter(|&i| alive[i]) {
            for &j in &hits[i] {
                attacked[j] = true;
            }
        }
        let mut changed = false;
        for i in 0..r {
            if alive[i] && !sure[i] && !attacked[i] {
                sure[i] = true;
                changed = true;
            }
        }
        for i in (0..r).filter(|&i| sure[i]) {
            for &j in &hits[i] {
                if alive[j] {
                    alive[j] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    (0..r).filter(|&i| alive[i]).collect()
}

/// Finds every tab edge of a histogram graph.
pub fn find_initial_tabs(g: &VisGraph) -> Result<Vec<TabClique>, HistogramError> {
    let recs = enumerate_one_simplicial_edges(g, Some(4));
    let keep = eliminate_crossing(g, &recs);
    let recs: Vec<&EdgeCliqueRecord> = keep.iter().map(|&i| &recs[i]).collect();

    // Group overlapping cliques.
    let cliques: Vec<Vec<usize>> = recs.iter().map(|r| r.clique.clone()).collect::<BTreeSet<_>>().into_iter().collect();
    let mut group = vec![usize::MAX; cliques.len()];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for start in 0..cliques.len() {
        if group[start] != usize::MAX {
            continue;
        }
        let id = groups.len();
        let mut members = vec![start];
        group[start] = id;
        let mut at = 0;
        while at < members.len() {
            let c = members[at];
            at += 1;
            for o in 0..cliques.len() {
                if group[o] == usize::MAX && cliques[o].iter().any(|v| cliques[c].contains(v)) {
                    group[o] = id;
                    members.push(o);
                }
            }
        }
        groups.push(members);
    }

    let mut tabs = Vec::with_capacity(groups.len());
    for members in &groups {
        let set: Vec<&Vec<usize>> = members.iter().map(|&c| &cliques[c]).collect();
        let edge = match set.len() {
            1 => lone_clique_tab(g, set[0])?,
            2 => paired_clique_tab(g, &set, &recs)?,
            3 => triple_clique_tab(&set)?,
            s => return Err(HistogramError::Tab(format!("{s} overlapping 4-cliques"))),
        };
        let clique = recs
            .iter()
            .find(|r| r.edge == edge)
            .map(|r| r.clique.clone())
            .ok_or_else(|| HistogramError::Tab(format!("tab {edge:?} is not a 1-simplicial 4-clique edge")))?;
        tabs.push(TabClique { edge, clique });
    }
    if tabs.is_empty() {
        return Err(HistogramError::Tab("no tab cliques".into()));
    }
    tabs.sort();
    Ok(tabs)
}

fn sorted(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// A lone clique: the two members of smaller degree form the tab.
fn lone_clique_tab(g: &VisGraph, c: &[usize]) -> Result<(usize, usize), HistogramError> {
    let mut by_deg: Vec<(usize, usize)> = c.iter().map(|&v| (g.degree(v), v)).collect();
    by_deg.sort();
    // The unit square: all four corners are alike, any edge will do.
    let whole_graph = g.n() == c.len();
    if by_deg[1].0 >= by_deg[2].0 && !whole_graph {
        return Err(HistogramError::Tab(format!("clique {c:?} has no pair of strictly smaller degree")));
    }
    let e = sorted(by_deg[0].1, by_deg[1].1);
    if !g.has_edge(e.0, e.1) {
        return Err(HistogramError::Tab(format!("low-degree pair {e:?} is not an edge")));
    }
    Ok(e)
}

/// Two cliques sharing three labels: the private label of smaller degree is a
/// tab vertex, and the other private label's 1-simplicial edge leads to its partner.
fn paired_clique_tab(g: &VisGraph, set: &[&Vec<usize>], recs: &[&EdgeCliqueRecord]) -> Result<(usize, usize), HistogramError> {
    let (a, b) = (set[0], set[1]);
    let pa: Vec<usize> = a.iter().copied().filter(|v| !b.contains(v)).collect();
    let pb: Vec<usize> = b.iter().copied().filter(|v| !a.contains(v)).collect();
    let ([u0], [v0]) = (&pa[..], &pb[..]) else {
        return Err(HistogramError::Tab("paired cliques do not share three labels".into()));
    };
    let (u, v, v_clique) = match g.degree(*u0).cmp(&g.degree(*v0)) {
        std::cmp::Ordering::Less => (*u0, *v0, b),
        std::cmp::Ordering::Greater => (*v0, *u0, a),
        std::cmp::Ordering::Equal => return Err(HistogramError::Tab("paired cliques are symmetric".into())),
    };
    let partners: Vec<usize> = recs
        .iter()
        .filter(|r| &r.clique == v_clique && (r.edge.0 == v || r.edge.1 == v))
        .map(|r| if r.edge.0 == v { r.edge.1 } else { r.edge.0 })
        .collect();
    let [w] = partners[..] else {
        return Err(HistogramError::Tab(format!("label {v} has {} simplicial partners", partners.len())));
    };
    if !g.has_edge(u, w) {
        return Err(HistogramError::Tab(format!("tab candidate ({u}, {w}) is not an edge")));
    }
    Ok(sorted(u, w))
}

/// Three cliques: the tab joins the two labels that lie in exactly two of them.
fn triple_clique_tab(set: &[&Vec<usize>]) -> Result<(usize, usize), HistogramError> {
    let labels: BTreeSet<usize> = set.iter().flat_map(|c| c.iter().copied()).collect();
    let twice: Vec<usize> = labels.into_iter().filter(|v| set.iter().filter(|c| c.contains(v)).count() == 2).collect();
    let [a, b] = twice[..] else {
        return Err(HistogramError::Tab(format!("{} labels lie in exactly two of three cliques", twice.len())));
    };
    Ok(sorted(a, b))
}

/// Tab vertices and labels seeing no tab vertex are top labels.
pub fn classify_top_bottom(g: &VisGraph, tabs: &[TabClique]) -> Vec<bool> {
    let mut tab = vec![false; g.n()];
    for t in tabs {
        tab[t.edge.0] = true;
        tab[t.edge.1] = true;
    }
    (0..g.n()).map(|v| tab[v] || g.neighbors(v).iter().all(|&w| !tab[w])).collect()
}
