//! Tab peeling and contact-tree construction.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::contact_tree::{ContactNode, ContactTree};
use crate::graph::VisGraph;

use super::tabs::TabClique;
use super::HistogramError;

/// Level and top/bottom role of every label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelAssignment {
    pub level_of: Vec<usize>,
    pub is_top: Vec<bool>,
}

fn peel_err(msg: impl Into<String>) -> HistogramError {
    HistogramError::Peel(msg.into())
}

fn sorted(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Removes tab rectangles one at a time, recording each as a tree node, until
/// the base rectangle is gone. Node pairs are sorted by label; children are
/// listed in peeling order.
pub fn peel_and_build_tree(
    g: &VisGraph,
    tabs: &[TabClique],
    is_top: &[bool],
) -> Result<(ContactTree, LevelAssignment), HistogramError> {
    let n = g.n();
    if n % 4 != 0 {
        return Err(peel_err(format!("{n} labels cannot tile into rectangles")));
    }
    let mut alive = vec![true; n];
    let mut nodes: Vec<ContactNode> = Vec::new();
    // Peeled nodes still waiting for a parent, stored at their bottom labels.
    let mut waiting: Vec<Option<usize>> = vec![None; n];
    let mut queue: VecDeque<((usize, usize), (usize, usize))> = tabs.iter().map(|t| (t.edge, sorted(t.bottoms().0, t.bottoms().1))).collect();
    for t in tabs {
        let (u, v) = t.bottoms();
        if is_top[u] || is_top[v] || !is_top[t.edge.0] || !is_top[t.edge.1] {
            return Err(peel_err(format!("tab clique {:?} does not split into two tops and two bottoms", t.clique)));
        }
    }

    while let Some((top, bottom)) = queue.pop_front() {
        let labels = [top.0, top.1, bottom.0, bottom.1];
        if labels.iter().any(|&l| !alive[l]) {
            return Err(peel_err(format!("rectangle {labels:?} overlaps a removed one")));
        }
        for &l in &labels {
            alive[l] = false;
        }
        let id = nodes.len();
        // Adopt waiting nodes whose bottoms both tops see.
        let mut children = Vec::new();
        for &w in g.neighbors(top.0) {
            if let Some(c) = waiting[w] {
                let (a, b) = nodes[c].bottom;
                if g.has_edge(top.1, a) && g.has_edge(top.1, b) && g.has_edge(top.0, a) && g.has_edge(top.0, b) {
                    waiting[a] = None;
                    waiting[b] = None;
                    nodes[c].parent = Some(id);
                    children.push(c);
                }
            }
        }
        children.sort_unstable();
        nodes.push(ContactNode { top, bottom, children, parent: None });
        waiting[bottom.0] = Some(id);
        waiting[bottom.1] = Some(id);

        // The tops seeing both removed bottoms become a tab once nothing else lies between them.
        let (u, v) = bottom;
        let next: Vec<usize> = (0..n).filter(|&t| alive[t] && is_top[t] && g.has_edge(t, u) && g.has_edge(t, v)).collect();
        match next[..] {
            [] => {}
            [a, b] => {
                if !g.has_edge(a, b) {
                    return Err(peel_err(format!("new tab candidates {a} and {b} do not see each other")));
                }
                let common: Vec<usize> = g.neighbors(a).iter().copied().filter(|&w| alive[w] && g.has_edge(b, w)).collect();
                if common.len() == 2 {
                    if common.iter().any(|&w| is_top[w]) {
                        return Err(peel_err(format!("new tab ({a}, {b}) sits on a top label")));
                    }
                    if !queue.iter().any(|&(t, _)| t == (a, b)) {
                        queue.push_back(((a, b), (common[0], common[1])));
                    }
                }
            }
            _ => return Err(peel_err(format!("{} tops see both bottoms {u} and {v}", next.len()))),
        }
    }

    if alive.iter().any(|&a| a) {
        return Err(peel_err(format!("{} labels left after peeling", alive.iter().filter(|&&a| a).count())));
    }
    let roots: Vec<usize> = (0..nodes.len()).filter(|&i| nodes[i].parent.is_none()).collect();
    let [root] = roots[..] else {
        return Err(peel_err(format!("peeling left {} parentless rectangles", roots.len())));
    };
    let tree = ContactTree { nodes, root };
    let depth = tree.depths();
    let mut level_of = vec![0; n];
    for (i, node) in tree.nodes.iter().enumerate() {
        level_of[node.bottom.0] = depth[i];
        level_of[node.bottom.1] = depth[i];
        level_of[node.top.0] = depth[i] + 1;
        level_of[node.top.1] = depth[i] + 1;
    }
    Ok((tree, LevelAssignment { level_of, is_top: is_top.to_vec() }))
}
