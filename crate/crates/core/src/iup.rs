//! Reconstruction of irregular uniform-length orthogonally convex polygons.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::generators::{gen_iup, IupParams};
use crate::geometry::{compute_visibility_graph, LatticePoint, PolygonClass, VertexKind};
use crate::graph::{enumerate_one_simplicial_edges, find_isomorphism, one_simplicial_clique, VisGraph};
use crate::reconstruction::LabeledReconstruction;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IupError {
    #[error("tab search failed: {0}")]
    Tab(String),
    #[error("elementary clique chain failed: {0}")]
    Chain(String),
    #[error("staircase assignment failed: {0}")]
    Assign(String),
    #[error("not an IUP visibility graph: {0}")]
    NotIup(String),
}

fn tab_err(msg: impl Into<String>) -> IupError {
    IupError::Tab(msg.into())
}

fn assign_err(msg: impl Into<String>) -> IupError {
    IupError::Assign(msg.into())
}

/// Convex and reflex labels, each sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvexReflexPartition {
    pub convex: Vec<usize>,
    pub reflex: Vec<usize>,
}

impl ConvexReflexPartition {
    pub fn kind_of(&self, n: usize) -> Vec<VertexKind> {
        let mut kind = vec![VertexKind::Reflex; n];
        for &c in &self.convex {
            kind[c] = VertexKind::Convex;
        }
        kind
    }
}

/// Labels that are endpoints of some 1-simplicial edge are convex.
pub fn classify_convex_reflex(g: &VisGraph) -> ConvexReflexPartition {
    let mut convex = vec![false; g.n()];
    for rec in enumerate_one_simplicial_edges(g, None) {
        convex[rec.edge.0] = true;
        convex[rec.edge.1] = true;
    }
    let (convex, reflex): (Vec<usize>, Vec<usize>) = (0..g.n()).partition(|&v| convex[v]);
    ConvexReflexPartition { convex, reflex }
}

/// A tab edge split by the staircase each endpoint continues into.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tab {
    /// Endpoint on a long staircase.
    pub long: usize,
    /// Endpoint on a short staircase.
    pub short: usize,
    /// The tab's maximal 7-clique.
    pub clique: Vec<usize>,
}

impl Tab {
    pub fn pair(&self) -> (usize, usize) {
        (self.long.min(self.short), self.long.max(self.short))
    }

    pub fn contains(&self, v: usize) -> bool {
        v == self.long || v == self.short
    }
}

/// The four tabs. Before the staircase walk only `north` is meaningful and
/// the other three are listed in label order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TabAssignment {
    pub north: Tab,
    pub east: Tab,
    pub south: Tab,
    pub west: Tab,
}

impl TabAssignment {
    pub fn all(&self) -> [&Tab; 4] {
        [&self.north, &self.east, &self.south, &self.west]
    }

    fn labels(&self) -> BTreeSet<usize> {
        self.all().iter().flat_map(|t| [t.long, t.short]).collect()
    }
}

fn count_in(g: &VisGraph, v: usize, set: &[bool]) -> usize {
    g.neighbors(v).iter().filter(|&&w| set[w]).count()
}

/// Finds the four tabs from the 7-cliques holding exactly three convex labels.
pub fn find_tabs(g: &VisGraph, part: &ConvexReflexPartition) -> Result<TabAssignment, IupError> {
    let kind = part.kind_of(g.n());
    let is_convex: Vec<bool> = kind.iter().map(|k| *k == VertexKind::Convex).collect();
    let is_reflex: Vec<bool> = is_convex.iter().map(|c| !c).collect();
    let cliques: BTreeSet<Vec<usize>> = enumerate_one_simplicial_edges(g, Some(7))
        .into_iter()
        .map(|r| r.clique)
        .filter(|c| c.iter().filter(|&&v| is_convex[v]).count() == 3)
        .collect();
    if cliques.len() != 4 {
        return Err(tab_err(format!("expected 4 qualifying 7-cliques, found {}", cliques.len())));
    }
    let mut tabs = Vec::new();
    for clique in cliques {
        let c: Vec<usize> = clique.iter().copied().filter(|&v| is_convex[v]).collect();
        let simplicial: Vec<(usize, usize)> = [(c[0], c[1]), (c[0], c[2]), (c[1], c[2])]
            .into_iter()
            .filter(|&(u, v)| g.has_edge(u, v) && one_simplicial_clique(g, u, v).unwrap().is_some())
            .collect();
        let [(a, b), (x, y)] = simplicial[..] else {
            return Err(tab_err(format!("clique {clique:?} has {} simplicial convex pairs", simplicial.len())));
        };
        let middle = if a == x || a == y { a } else { b };
        let ends: Vec<usize> = [a, b, x, y].into_iter().filter(|&v| v != middle).collect();
        let [p, q] = ends[..] else {
            return Err(tab_err("convex pairs do not form a path"));
        };
        let key = |v: usize| (count_in(g, v, &is_reflex), std::cmp::Reverse(count_in(g, v, &is_convex)));
        let partner = match key(p).cmp(&key(q)) {
            std::cmp::Ordering::Greater => p,
            std::cmp::Ordering::Less => q,
            std::cmp::Ordering::Equal => {
                return Err(tab_err(format!("tab partner of {middle} is ambiguous between {p} and {q}")));
            }
        };
        tabs.push(Tab { long: middle, short: partner, clique });
    }
    let labels: BTreeSet<usize> = tabs.iter().flat_map(|t| [t.long, t.short]).collect();
    if labels.len() != 8 {
        return Err(tab_err("tab vertices are not distinct"));
    }
    let north_at = (0..4).min_by_key(|&i| tabs[i].long.min(tabs[i].short)).unwrap();
    let north = tabs.remove(north_at);
    tabs.sort_by_key(|t| t.long.min(t.short));
    let [east, south, west]: [Tab; 3] = tabs.try_into().unwrap();
    Ok(TabAssignment { north, east, south, west })
}

/// Elementary cliques: 1-simplicial cliques on 7 or 9 labels with exactly three convex ones.
fn elementary_cliques(g: &VisGraph, is_convex: &[bool]) -> Vec<Vec<usize>> {
    let set: BTreeSet<Vec<usize>> = enumerate_one_simplicial_edges(g, None)
        .into_iter()
        .filter(|r| r.size == 7 || r.size == 9)
        .map(|r| r.clique)
        .filter(|c| c.iter().filter(|&&v| is_convex[v]).count() == 3)
        .collect();
    set.into_iter().collect()
}

/// Walks interlocking elementary cliques from `start` until one holds both
/// labels of a tab in `targets`. Returns the chain and the index of that tab.
fn walk_chain(
    elementary: &[Vec<usize>],
    is_convex: &[bool],
    start: &[usize],
    targets: &[&Tab],
) -> Result<(Vec<Vec<usize>>, usize), IupError> {
    let mut chain = vec![start.to_vec()];
    let mut used: BTreeSet<&[usize]> = BTreeSet::new();
    used.insert(start);
    loop {
        let current = chain.last().unwrap();
        let reflex: BTreeSet<usize> = current.iter().copied().filter(|&v| !is_convex[v]).collect();
        let next: Vec<&Vec<usize>> = elementary
            .iter()
            .filter(|c| !used.contains(c.as_slice()))
            .filter(|c| c.iter().filter(|v| reflex.contains(v)).count() == 3)
            .collect();
        let [next] = next[..] else {
            return Err(IupError::Chain(format!("clique {current:?} has {} successors", next.len())));
        };
        used.insert(next);
        chain.push(next.clone());
        if let Some(t) = targets.iter().position(|t| next.contains(&t.long) && next.contains(&t.short)) {
            return Ok((chain, t));
        }
    }
}

/// Elementary cliques along the short staircase leaving the north tab, in
/// order. Also settles which tab is west; the returned assignment has the
/// west tab in place and east/south still provisional.
pub fn elementary_cliques_nw(
    g: &VisGraph,
    part: &ConvexReflexPartition,
    tabs: &TabAssignment,
) -> Result<(Vec<Vec<usize>>, TabAssignment), IupError> {
    let is_convex: Vec<bool> = part.kind_of(g.n()).iter().map(|k| *k == VertexKind::Convex).collect();
    let elementary = elementary_cliques(g, &is_convex);
    if !elementary.contains(&tabs.north.clique) {
        return Err(IupError::Chain("north tab clique is not elementary".into()));
    }
    let others = [&tabs.east, &tabs.south, &tabs.west];
    let (chain, w) = walk_chain(&elementary, &is_convex, &tabs.north.clique, &others)?;
    let mut rest: Vec<Tab> = others.iter().map(|&t| t.clone()).collect();
    let west = rest.remove(w);
    let [east, south]: [Tab; 2] = rest.try_into().unwrap();
    Ok((chain, TabAssignment { north: tabs.north.clone(), east, south, west }))
}

/// Convex labels of each staircase in boundary order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvexOrders {
    pub tabs: TabAssignment,
    /// From the north tab to the west tab.
    pub northwest: Vec<usize>,
    /// From the north tab to the east tab.
    pub northeast: Vec<usize>,
    /// From the east tab to the south tab.
    pub southeast: Vec<usize>,
    /// From the west tab to the south tab.
    pub southwest: Vec<usize>,
}

/// Non-tab convex labels of a chain that no tab vertex at either end sees, in chain order.
fn short_interior(g: &VisGraph, chain: &[Vec<usize>], is_convex: &[bool], ends: [&Tab; 2], all_tabs: &BTreeSet<usize>) -> Result<Vec<usize>, IupError> {
    let tab_vertices = [ends[0].long, ends[0].short, ends[1].long, ends[1].short];
    let mut out = Vec::new();
    for clique in &chain[1..chain.len() - 1] {
        let hidden: Vec<usize> = clique
            .iter()
            .copied()
            .filter(|&v| is_convex[v] && !all_tabs.contains(&v))
            .filter(|&v| tab_vertices.iter().all(|&t| !g.has_edge(v, t)))
            .collect();
        let [v] = hidden[..] else {
            return Err(assign_err(format!("clique {clique:?} has {} hidden convex labels", hidden.len())));
        };
        out.push(v);
    }
    Ok(out)
}

fn mask(n: usize, items: impl IntoIterator<Item = usize>) -> Vec<bool> {
    let mut m = vec![false; n];
    for v in items {
        m[v] = true;
    }
    m
}

/// Places every convex label on a staircase and orders each staircase.
pub fn assign_convex_vertices(
    g: &VisGraph,
    part: &ConvexReflexPartition,
    tabs: &TabAssignment,
    chain: &[Vec<usize>],
) -> Result<ConvexOrders, IupError> {
    let n = g.n();
    let is_convex = mask(n, part.convex.iter().copied());
    let tab_labels = tabs.labels();
    let (north, west) = (&tabs.north, &tabs.west);

    let mut northwest = vec![north.short];
    northwest.extend(short_interior(g, chain, &is_convex, [north, west], &tab_labels)?);
    northwest.push(west.short);

    // Opposite short staircase, walked from one remaining tab to the other.
    let elementary = elementary_cliques(g, &is_convex);
    let (x, y) = (&tabs.east, &tabs.south);
    let (se_chain, _) = walk_chain(&elementary, &is_convex, &x.clique, &[y])?;
    let se_interior = short_interior(g, &se_chain, &is_convex, [x, y], &tab_labels)?;

    let short: BTreeSet<usize> = northwest.iter().chain(&se_interior).copied().collect();
    let long: BTreeSet<usize> = part
        .convex
        .iter()
        .copied()
        .filter(|v| !short.contains(v) && !tab_labels.contains(v))
        .collect();

    // First layers: long-staircase labels of the north-west chain.
    let mut e0 = BTreeSet::new();
    let mut w0 = BTreeSet::new();
    for v in chain.iter().flatten().copied().filter(|v| long.contains(v)) {
        match (g.has_edge(v, north.long), g.has_edge(v, west.long)) {
            (false, true) => e0.insert(v),
            (true, false) => w0.insert(v),
            _ => return Err(assign_err(format!("cannot side chain label {v}"))),
        };
    }
    let (mut e_seen, mut w_seen) = (e0.clone(), w0.clone());
    let (mut e_prev, mut w_prev) = (e0, w0);
    while !e_prev.is_empty() || !w_prev.is_empty() {
        let reach = |from: &BTreeSet<usize>, seen: &BTreeSet<usize>| -> BTreeSet<usize> {
            from.iter()
                .flat_map(|&v| g.neighbors(v).iter().copied())
                .filter(|w| long.contains(w) && !seen.contains(w))
                .collect()
        };
        let e_next = reach(&w_prev, &e_seen);
        let w_next = reach(&e_prev, &w_seen);
        if e_next.iter().any(|v| w_seen.contains(v) || w_next.contains(v)) || w_next.iter().any(|v| e_seen.contains(v)) {
            return Err(assign_err("a label reaches both long staircases"));
        }
        e_seen.extend(&e_next);
        w_seen.extend(&w_next);
        e_prev = e_next;
        w_prev = w_next;
    }
    if e_seen.len() + w_seen.len() != long.len() {
        return Err(assign_err(format!("{} long-staircase labels unreachable", long.len() - e_seen.len() - w_seen.len())));
    }

    // The east tab's long vertex sees the south-west staircase; the south tab's does not.
    let sees_west = |t: &Tab| w_seen.iter().any(|&w| g.has_edge(w, t.long));
    let (east, south, se_forward) = match (sees_west(x), sees_west(y)) {
        (true, false) => (x.clone(), y.clone(), true),
        (false, true) => (y.clone(), x.clone(), false),
        _ => return Err(assign_err("cannot tell the east tab from the south tab")),
    };
    let mut southeast = vec![east.short];
    if se_forward {
        southeast.extend(se_interior.iter().copied());
    } else {
        southeast.extend(se_interior.iter().rev().copied());
    }
    southeast.push(south.short);

    let s_len = northwest.len() - 1;
    if southeast.len() != s_len + 1 {
        return Err(assign_err("opposite short staircases differ in length"));
    }
    if e_seen.len() != w_seen.len() {
        return Err(assign_err("opposite long staircases differ in length"));
    }
    let l_len = e_seen.len() + 1;
    if s_len == l_len {
        return Err(assign_err("staircases are regular"));
    }
    let template = gen_iup(IupParams { s: s_len, l: l_len }).map_err(|e| assign_err(e.to_string()))?;
    let tg = compute_visibility_graph(&template.polygon);
    if tg.n() != n {
        return Err(assign_err("vertex count does not match the staircase lengths"));
    }
    let layout = CycleLayout { s: s_len, l: l_len };
    let mut slot = vec![usize::MAX; n];
    for (i, &v) in northwest.iter().enumerate() {
        slot[layout.northwest(i)] = v;
    }
    for (i, &v) in southeast.iter().enumerate() {
        slot[layout.southeast(i)] = v;
    }
    slot[layout.northeast(0)] = north.long;
    slot[layout.northeast(l_len)] = east.long;
    slot[layout.southwest(0)] = west.long;
    slot[layout.southwest(l_len)] = south.long;
    let open_ne: Vec<usize> = (1..l_len).map(|j| layout.northeast(j)).collect();
    let open_sw: Vec<usize> = (1..l_len).map(|j| layout.southwest(j)).collect();
    refine_placement(g, &tg, &mut slot, &[(e_seen, open_ne), (w_seen, open_sw)])?;
    let northeast: Vec<usize> = (0..=l_len).map(|j| slot[layout.northeast(j)]).collect();
    let southwest: Vec<usize> = (0..=l_len).map(|j| slot[layout.southwest(j)]).collect();

    let tabs = TabAssignment { north: north.clone(), east, south, west: west.clone() };
    Ok(ConvexOrders { tabs, northwest, northeast, southeast, southwest })
}

/// Positions on the template boundary cycle, which starts at the north tab's
/// short-side vertex and runs clockwise.
#[derive(Debug, Clone, Copy)]
struct CycleLayout {
    s: usize,
    l: usize,
}

impl CycleLayout {
    fn n(self) -> usize {
        4 * (self.s + self.l + 1)
    }

    /// Convex `j` of the north-east staircase counted from the north tab.
    fn northeast(self, j: usize) -> usize {
        1 + 2 * j
    }

    /// Convex `i` of the south-east staircase counted from the east tab.
    fn southeast(self, i: usize) -> usize {
        2 * self.l + 2 + 2 * i
    }

    /// Convex `i` of the south-west staircase counted from the west tab.
    fn southwest(self, i: usize) -> usize {
        4 * self.l + 2 * self.s + 3 - 2 * i
    }

    /// Convex `i` of the north-west staircase counted from the north tab.
    fn northwest(self, i: usize) -> usize {
        (self.n() - 2 * i) % self.n()
    }
}

/// Fills open template slots with labels. A label is placed once its
/// neighbors among placed labels match the filled neighbors of exactly one
/// open slot in its group, and no other label of the group matches that slot.
fn refine_placement(
    g: &VisGraph,
    tg: &VisGraph,
    slot: &mut [usize],
    groups: &[(BTreeSet<usize>, Vec<usize>)],
) -> Result<(), IupError> {
    let n = g.n();
    let mut pos_of = vec![usize::MAX; n];
    for (p, &v) in slot.iter().enumerate() {
        if v != usize::MAX {
            pos_of[v] = p;
        }
    }
    let mut pending: Vec<(BTreeSet<usize>, BTreeSet<usize>)> =
        groups.iter().map(|(labels, open)| (labels.clone(), open.iter().copied().collect())).collect();
    loop {
        let mut progress = false;
        for (labels, open) in pending.iter_mut() {
            let label_sig = |v: usize| -> Vec<usize> {
                let mut sig: Vec<usize> = g.neighbors(v).iter().map(|&w| pos_of[w]).filter(|&p| p != usize::MAX).collect();
                sig.sort_unstable();
                sig
            };
            let slot_sig = |p: usize| -> Vec<usize> {
                tg.neighbors(p).iter().copied().filter(|&q| slot[q] != usize::MAX).collect()
            };
            let mut by_sig: BTreeMap<Vec<usize>, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
            for &v in labels.iter() {
                by_sig.entry(label_sig(v)).or_default().0.push(v);
            }
            for &p in open.iter() {
                by_sig.entry(slot_sig(p)).or_default().1.push(p);
            }
            for (sig, (vs, ps)) in by_sig {
                match (vs.len(), ps.len()) {
                    (1, 1) => {
                        slot[ps[0]] = vs[0];
                        pos_of[vs[0]] = ps[0];
                        labels.remove(&vs[0]);
                        open.remove(&ps[0]);
                        progress = true;
                    }
                    (a, b) if a != b => {
                        return Err(assign_err(format!("{a} labels but {b} slots see placed positions {sig:?}")));
                    }
                    _ => {}
                }
            }
        }
        if pending.iter().all(|(labels, _)| labels.is_empty()) {
            return Ok(());
        }
        if !progress {
            return Err(assign_err("long staircase order is ambiguous"));
        }
    }
}

/// Every staircase as its full label sequence, plus the boundary cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StaircaseAssignment {
    /// North tab to west tab, alternating convex and reflex.
    pub northwest: Vec<usize>,
    /// North tab to east tab.
    pub northeast: Vec<usize>,
    /// East tab to south tab.
    pub southeast: Vec<usize>,
    /// West tab to south tab.
    pub southwest: Vec<usize>,
    /// Clockwise boundary cycle starting at the north tab's short-side vertex.
    pub cycle: Vec<usize>,
    /// Template coordinates for `cycle`.
    pub coords: Vec<LatticePoint>,
}

/// Reflex labels seen by both long-side vertices of the north and west tabs.
pub fn reflex_seed(g: &VisGraph, part: &ConvexReflexPartition, tabs: &TabAssignment) -> Vec<usize> {
    let both: Vec<usize> = g.neighbors(tabs.north.long).iter().copied().filter(|&v| g.has_edge(v, tabs.west.long)).collect();
    both.into_iter().filter(|v| part.reflex.binary_search(v).is_ok()).collect()
}

/// Places the reflex labels between consecutive convex labels and returns the boundary.
///
/// Each reflex label goes to the template position whose set of convex
/// viewers matches its convex neighborhood; labels with the same viewers are
/// placed lowest label first.
pub fn assign_reflex_vertices(
    g: &VisGraph,
    part: &ConvexReflexPartition,
    orders: &ConvexOrders,
) -> Result<StaircaseAssignment, IupError> {
    let s = orders.northwest.len() - 1;
    let l = orders.northeast.len() - 1;
    let template = gen_iup(IupParams { s, l }).map_err(|e| assign_err(e.to_string()))?;
    let tg = compute_visibility_graph(&template.polygon);
    let n = g.n();
    if template.polygon.len() != n {
        return Err(assign_err("vertex count does not match the staircase lengths"));
    }

    // Clockwise convex sequence matching the template's walk.
    let mut cycle_convex = vec![orders.tabs.north.short];
    cycle_convex.extend(&orders.northeast);
    cycle_convex.extend(&orders.southeast);
    cycle_convex.extend(orders.southwest.iter().rev());
    cycle_convex.extend(orders.northwest[1..].iter().rev());
    if cycle_convex.len() != template.convex_labels.len() {
        return Err(assign_err("convex count does not match the template"));
    }

    let mut slot = vec![usize::MAX; n];
    for (&pos, &label) in template.convex_labels.iter().zip(&cycle_convex) {
        slot[pos] = label;
    }
    let is_convex = mask(n, part.convex.iter().copied());
    let viewers_of_position = |pos: usize| -> Vec<usize> {
        let mut v: Vec<usize> = tg.neighbors(pos).iter().filter(|&&q| template.polygon.classify_vertex(q).unwrap() == VertexKind::Convex).map(|&q| slot[q]).collect();
        v.sort_unstable();
        v
    };
    let mut positions: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for &pos in &template.reflex_labels {
        positions.entry(viewers_of_position(pos)).or_default().push(pos);
    }
    let mut labels: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for &r in &part.reflex {
        let v: Vec<usize> = g.neighbors(r).iter().copied().filter(|&w| is_convex[w]).collect();
        labels.entry(v).or_default().push(r);
    }
    if positions.len() != labels.len() {
        return Err(assign_err("reflex neighborhoods do not match any placement"));
    }
    for (key, pos) in &positions {
        let Some(lab) = labels.get(key) else {
            return Err(assign_err("a reflex position has no matching label"));
        };
        if lab.len() != pos.len() {
            return Err(assign_err("reflex multiplicities differ"));
        }
        for (&p, &r) in pos.iter().zip(lab) {
            slot[p] = r;
        }
    }

    let cycle = slot;
    let coords = template.polygon.vertices().to_vec();
    let seg = |from: usize, to: usize| -> Vec<usize> { (from..=to).map(|i| cycle[i % n]).collect() };
    let ne_end = 1 + 2 * l;
    let se_end = ne_end + 1 + 2 * s;
    let sw_end = se_end + 1 + 2 * l;
    let northeast = seg(1, ne_end);
    let southeast = seg(ne_end + 1, se_end);
    let mut southwest = seg(se_end + 1, sw_end);
    southwest.reverse();
    let mut northwest = seg(sw_end + 1, n);
    northwest.reverse();

    for stair in [&northwest, &northeast, &southeast, &southwest] {
        check_reflex_order(g, &is_convex, stair)?;
    }
    Ok(StaircaseAssignment { northwest, northeast, southeast, southwest, cycle, coords })
}

/// Each reflex label is the only reflex label of its staircase seen by both convex neighbors.
fn check_reflex_order(g: &VisGraph, is_convex: &[bool], stair: &[usize]) -> Result<(), IupError> {
    let reflex: BTreeSet<usize> = stair.iter().copied().filter(|&v| !is_convex[v]).collect();
    for w in stair.windows(3).step_by(2) {
        let (c0, r, c1) = (w[0], w[1], w[2]);
        let common: Vec<usize> = g.neighbors(c0).iter().copied().filter(|v| g.has_edge(c1, *v) && reflex.contains(v)).collect();
        if common != [r] {
            return Err(assign_err(format!("convex pair ({c0}, {c1}) sees reflex {common:?}, expected [{r}]")));
        }
    }
    Ok(())
}

/// Smallest vertex count handled by the staircase pipeline.
pub const MIN_PIPELINE_VERTICES: usize = 13;

/// Full reconstruction of an IUP from its visibility graph.
pub fn reconstruct_iup(g: &VisGraph) -> Result<LabeledReconstruction, IupError> {
    if g.n() < MIN_PIPELINE_VERTICES {
        return brute_force_small(g);
    }
    pipeline(g).map_err(|e| IupError::NotIup(e.to_string()))
}

fn pipeline(g: &VisGraph) -> Result<LabeledReconstruction, IupError> {
    let part = classify_convex_reflex(g);
    let tabs = find_tabs(g, &part)?;
    let (chain, tabs) = elementary_cliques_nw(g, &part, &tabs)?;
    let orders = assign_convex_vertices(g, &part, &tabs, &chain)?;
    let stairs = assign_reflex_vertices(g, &part, &orders)?;
    let rec = LabeledReconstruction::from_cycle(&stairs.cycle, &stairs.coords, PolygonClass::Iup).map_err(|e| assign_err(e.to_string()))?;
    if !rec.verify(g) {
        return Err(assign_err("candidate visibility graph differs from the input"));
    }
    Ok(rec)
}

/// Every IUP on `n` vertices, compared with `g` up to relabeling.
fn brute_force_small(g: &VisGraph) -> Result<LabeledReconstruction, IupError> {
    let n = g.n();
    let total = if n >= 4 && n % 4 == 0 { (n - 4) / 4 } else { 0 };
    for s in 1..total {
        let l = total - s;
        if s == l {
            continue;
        }
        let gt = gen_iup(IupParams { s, l }).map_err(|e| IupError::NotIup(e.to_string()))?;
        let h = compute_visibility_graph(&gt.polygon);
        if let Some(map) = find_isomorphism(g, &h) {
            let mut cycle = vec![0; n];
            for (label, &i) in map.iter().enumerate() {
                cycle[i] = label;
            }
            return LabeledReconstruction::from_cycle(&cycle, gt.polygon.vertices(), PolygonClass::Iup)
                .map_err(|e| IupError::NotIup(e.to_string()));
        }
    }
    Err(IupError::NotIup(format!("no IUP has a visibility graph like this one on {n} vertices")))
}
