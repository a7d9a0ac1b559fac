//! Ground-truth polygons for every supported class.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::contact_tree::{ContactNode, ContactTree};
use crate::geometry::{GeometryError, LatticePoint, LatticePolygon, PolygonClass, VertexKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("boundary does not close: ends at {0}")]
    NotClosed(LatticePoint),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Step counts of an irregular uniform-length orthogonally convex polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IupParams {
    /// Steps on the northwest and southeast staircases.
    pub s: usize,
    /// Steps on the northeast and southwest staircases.
    pub l: usize,
}

impl IupParams {
    pub fn vertex_count(&self) -> usize {
        4 + 4 * (self.s + self.l)
    }
}

/// Peak heights `h_1..h_k` and dent heights `d_1..d_{k-1}` of a histogram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistogramParams {
    pub peaks: Vec<usize>,
    pub valleys: Vec<usize>,
}

impl HistogramParams {
    pub fn validate(&self) -> Result<(), GenError> {
        let k = self.peaks.len();
        if k == 0 {
            return Err(GenError::InvalidParams("at least one peak is required".into()));
        }
        if self.valleys.len() + 1 != k {
            return Err(GenError::InvalidParams(format!("{k} peaks need {} valleys, got {}", k - 1, self.valleys.len())));
        }
        if self.peaks.contains(&0) {
            return Err(GenError::InvalidParams("peak heights must be at least 1".into()));
        }
        for (i, &d) in self.valleys.iter().enumerate() {
            let lim = self.peaks[i].min(self.peaks[i + 1]);
            if d < 1 || d >= lim {
                return Err(GenError::InvalidParams(format!("valley {d} must lie in 1..{lim}")));
            }
        }
        Ok(())
    }
}

/// Which boundary chain a label lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Staircase {
    Northwest,
    Northeast,
    Southeast,
    Southwest,
    /// Rising chain of peak `i` (0-based), including the base-left or dent vertex it starts from.
    Up(usize),
    /// Falling chain of peak `i`.
    Down(usize),
}

/// A generated polygon with everything the tests need to know about it.
/// Labels are polygon vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundTruth {
    pub polygon: LatticePolygon,
    /// Tab edges; for convex polygons in the order north, east, south, west.
    pub tabs: Vec<(usize, usize)>,
    pub convex_labels: Vec<usize>,
    pub reflex_labels: Vec<usize>,
    pub staircase_of: Vec<Staircase>,
    pub contact_tree: Option<ContactTree>,
}

#[derive(Clone, Copy)]
enum Dir {
    N,
    E,
    S,
    W,
}

impl Dir {
    fn delta(self) -> (i32, i32) {
        match self {
            Dir::N => (0, 1),
            Dir::E => (1, 0),
            Dir::S => (0, -1),
            Dir::W => (-1, 0),
        }
    }
}

/// Accumulates unit moves; vertex `i` is the start of move `i`.
struct Walker {
    pos: LatticePoint,
    points: Vec<LatticePoint>,
    chain: Vec<Staircase>,
}

impl Walker {
    fn new() -> Self {
        Self { pos: LatticePoint::new(0, 0), points: Vec::new(), chain: Vec::new() }
    }

    fn step(&mut self, d: Dir, len: i32, chain: Staircase) {
        self.points.push(self.pos);
        self.chain.push(chain);
        let (dx, dy) = d.delta();
        self.pos = LatticePoint::new(self.pos.x + dx * len, self.pos.y + dy * len);
    }

    /// `steps` pairs of moves `first, second`.
    fn stairs(&mut self, steps: usize, first: Dir, second: Dir, chain: Staircase) {
        for _ in 0..steps {
            self.step(first, 1, chain);
            self.step(second, 1, chain);
        }
    }

    fn here(&self) -> usize {
        self.points.len()
    }

    fn finish(self) -> Result<(Vec<LatticePoint>, Vec<Staircase>), GenError> {
        if self.pos != LatticePoint::new(0, 0) {
            return Err(GenError::NotClosed(self.pos));
        }
        Ok((self.points, self.chain))
    }
}

fn kinds(poly: &LatticePolygon) -> (Vec<usize>, Vec<usize>) {
    (0..poly.len()).partition(|&i| poly.classify_vertex(i).unwrap() == VertexKind::Convex)
}

fn convex_polygon(s: usize, l: usize, class: PolygonClass) -> Result<GroundTruth, GenError> {
    use Staircase::*;
    let mut w = Walker::new();
    let mut tabs = Vec::new();
    // Tab move vertices belong to the staircase that ends there.
    let north = w.here();
    w.step(Dir::E, 1, Northwest);
    w.stairs(l, Dir::S, Dir::E, Northeast);
    let east = w.here();
    w.step(Dir::S, 1, Northeast);
    w.stairs(s, Dir::W, Dir::S, Southeast);
    let south = w.here();
    w.step(Dir::W, 1, Southeast);
    w.stairs(l, Dir::N, Dir::W, Southwest);
    let west = w.here();
    w.step(Dir::N, 1, Southwest);
    w.stairs(s, Dir::E, Dir::N, Northwest);
    let (points, chain) = w.finish()?;
    let n = points.len();
    for t in [north, east, south, west] {
        tabs.push((t, (t + 1) % n));
    }
    let polygon = LatticePolygon::new(points, class)?;
    let (convex_labels, reflex_labels) = kinds(&polygon);
    Ok(GroundTruth { polygon, tabs, convex_labels, reflex_labels, staircase_of: chain, contact_tree: None })
}

/// Irregular convex polygon with short staircases of `s` steps and long ones of `l` steps.
pub fn gen_iup(p: IupParams) -> Result<GroundTruth, GenError> {
    if p.s == 0 || p.l == 0 {
        return Err(GenError::InvalidParams("step counts must be at least 1".into()));
    }
    if p.s == p.l {
        return Err(GenError::InvalidParams(format!("s = l = {} is regular, not irregular", p.s)));
    }
    let gt = convex_polygon(p.s, p.l, PolygonClass::Iup)?;
    debug_assert_eq!(gt.polygon.len(), p.vertex_count());
    Ok(gt)
}

/// Regular convex polygon with all four staircases of `t` steps.
pub fn gen_regular_up(t: usize) -> Result<GroundTruth, GenError> {
    if t == 0 {
        return Err(GenError::InvalidParams("step count must be at least 1".into()));
    }
    convex_polygon(t, t, PolygonClass::RegularUp)
}

/// Histogram over a single base edge, walked left to right from the base-left corner.
pub fn gen_histogram(p: &HistogramParams) -> Result<GroundTruth, GenError> {
    p.validate()?;
    let k = p.peaks.len();
    let class = if k == 1 { PolygonClass::DoubleStaircase } else { PolygonClass::Histogram };
    let mut w = Walker::new();
    let mut tabs = Vec::new();
    let mut level = 0;
    for (i, &h) in p.peaks.iter().enumerate() {
        let rise = h - level;
        w.step(Dir::N, 1, Staircase::Up(i));
        w.stairs(rise - 1, Dir::E, Dir::N, Staircase::Up(i));
        tabs.push((w.here(), w.here() + 1));
        w.step(Dir::E, 1, Staircase::Up(i));
        let next = p.valleys.get(i).copied().unwrap_or(0);
        w.step(Dir::S, 1, Staircase::Down(i));
        w.stairs(h - next - 1, Dir::E, Dir::S, Staircase::Down(i));
        if i + 1 < k {
            w.step(Dir::E, 1, Staircase::Down(i));
        }
        level = next;
    }
    let width = w.pos.x;
    w.step(Dir::W, width, Staircase::Down(k - 1));
    let (points, chain) = w.finish()?;
    let polygon = LatticePolygon::new(points, class)?;
    let (convex_labels, reflex_labels) = kinds(&polygon);
    let contact_tree = Some(rectangle_tree(&polygon));
    Ok(GroundTruth { polygon, tabs, convex_labels, reflex_labels, staircase_of: chain, contact_tree })
}

/// Symmetric pyramid of `k` stacked rectangles.
pub fn gen_double_staircase(k: usize) -> Result<GroundTruth, GenError> {
    if k == 0 {
        return Err(GenError::InvalidParams("k must be at least 1".into()));
    }
    gen_histogram(&HistogramParams { peaks: vec![k], valleys: vec![] })
}

/// Horizontal-band decomposition of a histogram into rectangles.
fn rectangle_tree(poly: &LatticePolygon) -> ContactTree {
    struct Wall {
        x: i32,
        bottom: usize,
        top: usize,
        left: bool,
    }
    let n = poly.len();
    let mut bands: BTreeMap<i32, Vec<Wall>> = BTreeMap::new();
    for i in 0..n {
        let (a, b) = poly.edge(i);
        if a.x != b.x {
            continue;
        }
        let j = (i + 1) % n;
        let (bottom, top, left) = if a.y < b.y { (i, j, true) } else { (j, i, false) };
        bands.entry(a.y.min(b.y)).or_default().push(Wall { x: a.x, bottom, top, left });
    }
    let mut nodes: Vec<ContactNode> = Vec::new();
    let mut spans: Vec<(i32, i32)> = Vec::new();
    let mut previous: Vec<usize> = Vec::new();
    for (_, mut walls) in bands {
        walls.sort_by_key(|w| w.x);
        let mut current = Vec::new();
        for pair in walls.chunks(2) {
            let (l, r) = (&pair[0], &pair[1]);
            debug_assert!(l.left && !r.left);
            let id = nodes.len();
            let parent = previous.iter().copied().find(|&p| spans[p].0 <= l.x && r.x <= spans[p].1);
            nodes.push(ContactNode { top: (l.top, r.top), bottom: (l.bottom, r.bottom), children: Vec::new(), parent });
            spans.push((l.x, r.x));
            if let Some(p) = parent {
                nodes[p].children.push(id);
            }
            current.push(id);
        }
        previous = current;
    }
    ContactTree { nodes, root: 0 }
}

/// Random histogram with `k` peaks, heights at most `max_height`, and at
/// most `max_vertices` vertices.
pub fn random_histogram_params<R: Rng>(rng: &mut R, k: usize, max_height: usize, max_vertices: usize) -> HistogramParams {
    assert!(k >= 1 && (k == 1 || max_height >= 2), "no histogram satisfies these bounds");
    loop {
        let lowest = if k == 1 { 1 } else { 2 };
        let peaks: Vec<usize> = (0..k).map(|_| rng.gen_range(lowest..=max_height)).collect();
        let valleys: Vec<usize> = (0..k - 1).map(|i| rng.gen_range(1..peaks[i].min(peaks[i + 1]))).collect();
        let p = HistogramParams { peaks, valleys };
        if histogram_vertex_count(&p) <= max_vertices {
            return p;
        }
    }
}

/// Vertex count of the histogram described by `p`.
pub fn histogram_vertex_count(p: &HistogramParams) -> usize {
    let mut level = 0;
    let mut n = 1;
    for (i, &h) in p.peaks.iter().enumerate() {
        let next = p.valleys.get(i).copied().unwrap_or(0);
        n += 2 * (h - level) - 1 + 1 + 2 * (h - next) - 1 + usize::from(i + 1 < p.peaks.len());
        level = next;
    }
    n
}
