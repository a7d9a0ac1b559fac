//! Spine fixing, candidate enumeration and the left/right placement of labels.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::contact_tree::ContactTree;
use crate::generators::{gen_histogram, HistogramParams};
use crate::geometry::{compute_visibility_graph, LatticePolygon};
use crate::graph::{labeled_equal, VisGraph};
use crate::reconstruction::LabeledReconstruction;


/// First and last child of a node once its bottom pair is oriented. A flip
/// of `Some(true)` means the child's higher-labelled bottom is on the left;
/// leaf children carry no flip.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpineStep {
    pub first: usize,
    pub last: usize,
    pub first_flip: Option<bool>,
    pub last_flip: Option<bool>,
}

/// Spine steps of every node for both orientations of its bottom pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpineConstraints {
    /// `steps[v][flip]`; `None` for leaves, `Err` when the orientation contradicts the graph.
    pub steps: Vec<[Option<Result<SpineStep, String>>; 2]>,
    /// Number of free choices `(d-2)! 2^(d-2)` at every node with `d` children.
    pub radix: Vec<usize>,
}

impl SpineConstraints {
    /// Number of candidates left after fixing the spines.
    pub fn candidate_count(&self) -> usize {
        self.radix.iter().product()
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Bottom pair of `v` as (left, right) under `flip`.
fn oriented(pair: (usize, usize), flip: bool) -> (usize, usize) {
    if flip {
        (pair.1, pair.0)
    } else {
        pair
    }
}

/// For every node and orientation, finds the leftmost and rightmost children
/// from the single tab vertex each bottom sees.
pub fn fix_spines(g: &VisGraph, tree: &ContactTree) -> SpineConstraints {
    let n_nodes = tree.len();
    // Leaf owning each tab vertex, and the subtree interval of every node in preorder.
    let order = tree.preorder();
    let mut pre = vec![0; n_nodes];
    for (i, &v) in order.iter().enumerate() {
        pre[v] = i;
    }
    let size = tree.subtree_sizes();
    let in_subtree = |v: usize, w: usize| pre[v] <= pre[w] && pre[w] < pre[v] + size[v];
    let mut tab_leaf: BTreeMap<usize, usize> = BTreeMap::new();
    for v in tree.leaves() {
        tab_leaf.insert(tree.nodes[v].top.0, v);
        tab_leaf.insert(tree.nodes[v].top.1, v);
    }
    let seen_tab = |b: usize| -> Result<(usize, usize), String> {
        let seen: Vec<(usize, usize)> = g.neighbors(b).iter().filter_map(|x| tab_leaf.get(x).map(|&l| (*x, l))).collect();
        match seen[..] {
            [one] => Ok(one),
            _ => Err(format!("bottom {b} sees {} tab vertices", seen.len())),
        }
    };
    let child_flip = |c: usize, x: usize, want_left: bool| -> Result<Option<bool>, String> {
        if tree.is_leaf(c) {
            return Ok(None);
        }
        let (a, b) = tree.nodes[c].bottom;
        match (g.has_edge(a, x), g.has_edge(b, x)) {
            (true, false) => Ok(Some(!want_left)),
            (false, true) => Ok(Some(want_left)),
            _ => Err(format!("tab vertex {x} does not pick one bottom of rectangle {c}")),
        }
    };

    let mut steps = Vec::with_capacity(n_nodes);
    let mut radix = Vec::new();
    for v in 0..n_nodes {
        let node = &tree.nodes[v];
        if node.children.is_empty() {
            steps.push([None, None]);
            continue;
        }
        let d = node.children.len();
        if d >= 3 {
            radix.push(factorial(d - 2) << (d - 2));
        }
        let step = |flip: bool| -> Result<SpineStep, String> {
            let (bl, br) = oriented(node.bottom, flip);
            let (xl, leaf_l) = seen_tab(bl)?;
            let (xr, leaf_r) = seen_tab(br)?;
            if !in_subtree(v, leaf_l) || !in_subtree(v, leaf_r) {
                return Err(format!("rectangle {v} sees a tab outside its subtree"));
            }
            let holder = |leaf: usize| node.children.iter().copied().find(|&c| in_subtree(c, leaf)).unwrap();
            let (first, last) = (holder(leaf_l), holder(leaf_r));
            if (first == last) != (d == 1) {
                return Err(format!("rectangle {v} has {d} children but spines meet {}", if first == last { "once" } else { "twice" }));
            }
            let first_flip = child_flip(first, xl, true)?;
            let last_flip = child_flip(last, xr, false)?;
            if first == last && first_flip != last_flip {
                return Err(format!("spines disagree on rectangle {first}"));
            }
            Ok(SpineStep { first, last, first_flip, last_flip })
        };
        steps.push([Some(step(false)), Some(step(true))]);
    }
    SpineConstraints { steps, radix }
}

/// One fully ordered and oriented contact tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    /// Leaf nodes from left to right.
    pub leaf_order: Vec<usize>,
    /// Children of every node from left to right.
    pub child_order: Vec<Vec<usize>>,
    /// Bottom-pair flip of every node whose orientation the candidate fixes.
    pub flip: Vec<Option<bool>>,
}

/// The `index`-th permutation of `items` in lexicographic order.
fn nth_permutation(items: &[usize], mut index: usize) -> Vec<usize> {
    let mut pool = items.to_vec();
    let mut out = Vec::with_capacity(items.len());
    for i in (0..items.len()).rev() {
        let f = factorial(i);
        out.push(pool.remove(index / f));
        index %= f;
    }
    out
}

/// Decodes the candidate with the given digit vector (one digit per node with
/// three or more children, in node order). The root's lower-labelled bottom is left.
pub fn decode_candidate(tree: &ContactTree, spines: &SpineConstraints, digits: &[usize]) -> Result<Candidate, String> {
    let n_nodes = tree.len();
    let mut digit_of = vec![0; n_nodes];
    let mut it = digits.iter();
    for v in 0..n_nodes {
        if tree.nodes[v].children.len() >= 3 {
            digit_of[v] = *it.next().expect("one digit per branching node");
        }
    }
    let mut flip: Vec<Option<bool>> = vec![None; n_nodes];
    let mut child_order = vec![Vec::new(); n_nodes];
    flip[tree.root] = Some(false);
    let mut stack = vec![tree.root];
    while let Some(v) = stack.pop() {
        let kids = &tree.nodes[v].children;
        if kids.is_empty() {
            continue;
        }
        let f = flip[v].ok_or_else(|| format!("rectangle {v} is unoriented"))?;
        let step = spines.steps[v][usize::from(f)].clone().expect("internal node").map_err(|e| e.to_string())?;
        let mut order = vec![step.first];
        if kids.len() >= 2 {
            let middle: Vec<usize> = kids.iter().copied().filter(|&c| c != step.first && c != step.last).collect();
            let m = middle.len();
            let digit = digit_of[v];
            let perm = nth_permutation(&middle, digit >> m);
            for (i, &c) in perm.iter().enumerate() {
                flip[c] = Some(digit >> (m - 1 - i) & 1 == 1);
            }
            order.extend(perm);
            order.push(step.last);
        }
        flip[step.first] = flip[step.first].or(step.first_flip);
        flip[step.last] = flip[step.last].or(step.last_flip);
        for &c in &order {
            if !tree.nodes[c].children.is_empty() && flip[c].is_none() {
                return Err(format!("rectangle {c} is left unoriented"));
            }
        }
        stack.extend(order.iter().rev());
        child_order[v] = order;
    }
    let mut leaf_order = Vec::new();
    let mut stack = vec![tree.root];
    while let Some(v) = stack.pop() {
        if child_order[v].is_empty() {
            leaf_order.push(v);
        }
        stack.extend(child_order[v].iter().rev());
    }
    Ok(Candidate { leaf_order, child_order, flip })
}

/// Every digit vector in lexicographic order.
pub fn digit_vectors(radix: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let total: usize = radix.iter().product();
    (0..total).map(move |mut i| {
        let mut digits = vec![0; radix.len()];
        for (d, &r) in digits.iter_mut().zip(radix).rev() {
            *d = i % r;
            i /= r;
        }
        digits
    })
}

/// Peak and valley heights of the histogram a candidate describes.
pub fn candidate_params(tree: &ContactTree, cand: &Candidate) -> HistogramParams {
    let depth = tree.depths();
    let mut peaks = Vec::new();
    let mut valleys = Vec::new();
    // Walk the ordered tree; between consecutive leaves the valley is the top of their lowest common ancestor.
    fn walk(v: usize, cand: &Candidate, depth: &[usize], peaks: &mut Vec<usize>, valleys: &mut Vec<usize>) {
        if cand.child_order[v].is_empty() {
            peaks.push(depth[v] + 1);
            return;
        }
        for (i, &c) in cand.child_order[v].iter().enumerate() {
            if i > 0 {
                valleys.push(depth[v] + 1);
            }
            walk(c, cand, depth, peaks, valleys);
        }
    }
    walk(tree.root, cand, &depth, &mut peaks, &mut valleys);
    HistogramParams { peaks, valleys }
}

/// The polygon a candidate describes, with its oracle graph and the
/// template position pair `(left, right)` of each node's tops and bottoms.
#[derive(Debug, Clone)]
pub struct CandidateShape {
    pub params: HistogramParams,
    pub polygon: LatticePolygon,
    pub graph: VisGraph,
    pub top_pos: Vec<(usize, usize)>,
    pub bottom_pos: Vec<(usize, usize)>,
}

/// Builds the candidate's polygon and matches its rectangles to ours.
pub fn candidate_shape(tree: &ContactTree, cand: &Candidate) -> Result<CandidateShape, String> {
    let params = candidate_params(tree, cand);
    let gt = gen_histogram(&params).map_err(|e| e.to_string())?;
    let template = gt.contact_tree.expect("histograms carry their tree");
    let mut top_pos = vec![(0, 0); tree.len()];
    let mut bottom_pos = vec![(0, 0); tree.len()];
    let mut stack = vec![(tree.root, template.root)];
    while let Some((v, t)) = stack.pop() {
        let tn = &template.nodes[t];
        if tn.children.len() != cand.child_order[v].len() {
            return Err("candidate shape does not match the contact tree".into());
        }
        top_pos[v] = tn.top;
        bottom_pos[v] = tn.bottom;
        stack.extend(cand.child_order[v].iter().copied().zip(tn.children.iter().copied()));
    }
    let graph = compute_visibility_graph(&gt.polygon);
    Ok(CandidateShape { params, polygon: gt.polygon, graph, top_pos, bottom_pos })
}

/// Places every label of `g` on the candidate polygon, or explains why it cannot.
///
/// Oriented bottom pairs are placed first. Each remaining pair is then placed
/// the one way that agrees with every visibility to already placed labels;
/// when every pair admits both ways, the lowest unplaced pair puts its lower
/// label on the left.
pub fn assign_x_coordinates(g: &VisGraph, tree: &ContactTree, cand: &Candidate, shape: &CandidateShape) -> Result<Vec<usize>, String> {
    let n = g.n();
    let mut place = vec![usize::MAX; n];
    let mut pending: Vec<((usize, usize), (usize, usize))> = Vec::new();
    for (v, node) in tree.nodes.iter().enumerate() {
        pending.push((node.top, shape.top_pos[v]));
        match cand.flip[v] {
            Some(f) => {
                let (l, r) = oriented(node.bottom, f);
                place[l] = shape.bottom_pos[v].0;
                place[r] = shape.bottom_pos[v].1;
            }
            None => pending.push((node.bottom, shape.bottom_pos[v])),
        }
    }
    let h = &shape.graph;
    let mut placed_labels: Vec<usize> = (0..n).filter(|&l| place[l] != usize::MAX).collect();
    let fits = |p: usize, pos: usize, placed_labels: &[usize], place: &[usize]| {
        placed_labels.iter().all(|&q| g.has_edge(p, q) == h.has_edge(pos, place[q]))
    };
    while !pending.is_empty() {
        let mut progress = false;
        let mut i = 0;
        while i < pending.len() {
            let ((a, b), (pl, pr)) = pending[i];
            let straight = fits(a, pl, &placed_labels, &place) && fits(b, pr, &placed_labels, &place);
            let crossed = fits(a, pr, &placed_labels, &place) && fits(b, pl, &placed_labels, &place);
            let chosen = match (straight, crossed) {
                (false, false) => return Err(format!("labels {a} and {b} fit neither side")),
                (true, false) => Some((a, b)),
                (false, true) => Some((b, a)),
                (true, true) => None,
            };
            if let Some((l, r)) = chosen {
                place[l] = pl;
                place[r] = pr;
                placed_labels.extend([l, r]);
                pending.swap_remove(i);
                progress = true;
            } else {
                i += 1;
            }
        }
        if !progress {
            let j = (0..pending.len()).min_by_key(|&j| pending[j].0).unwrap();
            let ((a, b), (pl, pr)) = pending.swap_remove(j);
            place[a] = pl;
            place[b] = pr;
            placed_labels.extend([a, b]);
        }
    }
    Ok(place)
}

/// Whether the placement turns the candidate polygon into a reconstruction of `g`.
pub fn verify_candidate(g: &VisGraph, shape: &CandidateShape, place: &[usize]) -> bool {
    let poly = &shape.polygon;
    let n = poly.len();
    if g.n() != n || place.len() != n {
        return false;
    }
    if poly.vertex(0).y != poly.vertex(n - 1).y {
        return false;
    }
    labeled_equal(g, &shape.graph, place).unwrap_or(false)
}

/// Packs a verified placement as a reconstruction.
pub fn placement_reconstruction(shape: &CandidateShape, place: &[usize]) -> LabeledReconstruction {
    let mut cycle = vec![0; place.len()];
    for (label, &i) in place.iter().enumerate() {
        cycle[i] = label;
    }
    LabeledReconstruction::from_cycle(&cycle, shape.polygon.vertices(), shape.polygon.class()).expect("template polygon is valid")
}
