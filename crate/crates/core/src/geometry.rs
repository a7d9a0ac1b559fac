//! Lattice polygons, the exact visibility predicate and the brute-force
//! visibility-graph oracle.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::VisGraph;

/// A point on the integer lattice. One unit is one polygon step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePoint {
    pub x: i32,
    pub y: i32,
}

impl LatticePoint {
    pub const fn new(x: i32, y: i32) -> Self {
        Self { x, y }
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl From<(i32, i32)> for LatticePoint {
    fn from((x, y): (i32, i32)) -> Self {
        Self { x, y }
    }
}

/// Polygon family tag carried alongside the vertex list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolygonClass {
    Iup,
    RegularUp,
    Histogram,
    DoubleStaircase,
    Generic,
}

impl PolygonClass {
    pub fn as_str(self) -> &'static str {
        match self {
            PolygonClass::Iup => "iup",
            PolygonClass::RegularUp => "regular-up",
            PolygonClass::Histogram => "histogram",
            PolygonClass::DoubleStaircase => "double-staircase",
            PolygonClass::Generic => "generic",
        }
    }

    fn has_base_edge(self) -> bool {
        matches!(self, PolygonClass::Histogram | PolygonClass::DoubleStaircase)
    }
}

impl fmt::Display for PolygonClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for PolygonClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "iup" => Ok(PolygonClass::Iup),
            "regular-up" => Ok(PolygonClass::RegularUp),
            "histogram" => Ok(PolygonClass::Histogram),
            "double-staircase" => Ok(PolygonClass::DoubleStaircase),
            "generic" => Ok(PolygonClass::Generic),
            other => Err(format!("unknown polygon class `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("polygon needs at least 4 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("edge {0} is not axis-parallel")]
    NotAxisParallel(usize),
    #[error("edge {0} has zero length")]
    ZeroLengthEdge(usize),
    #[error("edges {0} and {1} are collinear")]
    Collinear(usize, usize),
    #[error("edge {0} has length {1}, expected 1")]
    NonUnitEdge(usize, i64),
    #[error("expected exactly one base edge, found {0}")]
    BaseEdge(usize),
    #[error("edges {0} and {1} intersect")]
    SelfIntersection(usize, usize),
    #[error("vertices are not in clockwise order")]
    NotClockwise,
    #[error("coordinate {0} exceeds the supported range")]
    CoordinateRange(LatticePoint),
    #[error("vertex index {index} out of range for {n} vertices")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("visibility needs two distinct vertices, got {0} twice")]
    SameVertex(usize),
}

/// Interior angle class of a polygon vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexKind {
    Convex,
    Reflex,
}

/// Largest coordinate magnitude accepted by [`LatticePolygon::new`].
pub const COORD_LIMIT: i32 = 1_000_000;

/// A simple orthogonal polygon on the lattice, vertices in clockwise order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticePolygon {
    vertices: Vec<LatticePoint>,
    class: PolygonClass,
}

impl LatticePolygon {
    /// Validates and wraps a clockwise vertex list.
    pub fn new(vertices: Vec<LatticePoint>, class: PolygonClass) -> Result<Self, GeometryError> {
        let n = vertices.len();
        if n < 4 {
            return Err(GeometryError::TooFewVertices(n));
        }
        for p in &vertices {
            if p.x.abs() > COORD_LIMIT || p.y.abs() > COORD_LIMIT {
                return Err(GeometryError::CoordinateRange(*p));
            }
        }
        let poly = Self { vertices, class };
        for i in 0..n {
            let (a, b) = poly.edge(i);
            if a == b {
                return Err(GeometryError::ZeroLengthEdge(i));
            }
            if a.x != b.x && a.y != b.y {
                return Err(GeometryError::NotAxisParallel(i));
            }
        }
        for i in 0..n {
            let j = (i + 1) % n;
            if poly.is_horizontal(i) == poly.is_horizontal(j) {
                return Err(GeometryError::Collinear(i, j));
            }
        }
        if class != PolygonClass::Generic {
            poly.check_unit_edges()?;
        }
        poly.check_simple()?;
        if poly.twice_signed_area() >= 0 {
            return Err(GeometryError::NotClockwise);
        }
        Ok(poly)
    }

    fn check_unit_edges(&self) -> Result<(), GeometryError> {
        let long: Vec<usize> = (0..self.len()).filter(|&i| self.edge_length(i) != 1).collect();
        if self.class.has_base_edge() {
            match long.as_slice() {
                [] => Ok(()),
                [i] if self.is_horizontal(*i) => Ok(()),
                _ => Err(GeometryError::BaseEdge(long.len())),
            }
        } else if let Some(&i) = long.first() {
            Err(GeometryError::NonUnitEdge(i, self.edge_length(i)))
        } else {
            Ok(())
        }
    }

    fn check_simple(&self) -> Result<(), GeometryError> {
        let n = self.len();
        for i in 0..n {
            for j in i + 1..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                if adjacent {
                    continue;
                }
                let (a, b) = self.edge(i);
                let (c, d) = self.edge(j);
                if boxes_touch(a, b, c, d) {
                    return Err(GeometryError::SelfIntersection(i, j));
                }
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn class(&self) -> PolygonClass {
        self.class
    }

    pub fn with_class(mut self, class: PolygonClass) -> Self {
        self.class = class;
        self
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> LatticePoint {
        self.vertices[i]
    }

    /// Edge `i` runs from vertex `i` to vertex `i + 1` (cyclically).
    pub fn edge(&self, i: usize) -> (LatticePoint, LatticePoint) {
        (self.vertices[i], self.vertices[(i + 1) % self.len()])
    }

    fn is_horizontal(&self, i: usize) -> bool {
        let (a, b) = self.edge(i);
        a.y == b.y
    }

    fn edge_length(&self, i: usize) -> i64 {
        let (a, b) = self.edge(i);
        (a.x as i64 - b.x as i64).abs() + (a.y as i64 - b.y as i64).abs()
    }

    fn twice_signed_area(&self) -> i64 {
        let n = self.len();
        (0..n)
            .map(|i| {
                let (a, b) = self.edge(i);
                a.x as i64 * b.y as i64 - b.x as i64 * a.y as i64
            })
            .sum()
    }

    /// Axis-aligned bounding box as (min corner, max corner).
    pub fn bounding_box(&self) -> (LatticePoint, LatticePoint) {
        let xs = self.vertices.iter().map(|p| p.x);
        let ys = self.vertices.iter().map(|p| p.y);
        (
            LatticePoint::new(xs.clone().min().unwrap(), ys.clone().min().unwrap()),
            LatticePoint::new(xs.max().unwrap(), ys.max().unwrap()),
        )
    }

    /// Mirror image across the vertical axis, re-indexed to stay clockwise.
    ///
    /// Returns the polygon and the map from old vertex index to new index.
    pub fn mirrored(&self) -> (LatticePolygon, Vec<usize>) {
        let n = self.len();
        let mut vertices = Vec::with_capacity(n);
        let mut index_map = vec![0; n];
        for k in 0..n {
            let old = (n - k) % n;
            let p = self.vertices[old];
            vertices.push(LatticePoint::new(-p.x, p.y));
            index_map[old] = k;
        }
        (LatticePolygon { vertices, class: self.class }, index_map)
    }

    fn check_index(&self, i: usize) -> Result<(), GeometryError> {
        if i >= self.len() {
            Err(GeometryError::IndexOutOfRange { index: i, n: self.len() })
        } else {
            Ok(())
        }
    }

    /// Interior angle class of vertex `i`.
    pub fn classify_vertex(&self, i: usize) -> Result<VertexKind, GeometryError> {
        self.check_index(i)?;
        Ok(self.kind_unchecked(i))
    }

    fn kind_unchecked(&self, i: usize) -> VertexKind {
        let n = self.len();
        let prev = self.vertices[(i + n - 1) % n];
        let cur = self.vertices[i];
        let next = self.vertices[(i + 1) % n];
        let cross = (cur.x as i64 - prev.x as i64) * (next.y as i64 - cur.y as i64)
            - (cur.y as i64 - prev.y as i64) * (next.x as i64 - cur.x as i64);
        // Clockwise traversal: right turns are the convex corners.
        if cross < 0 {
            VertexKind::Convex
        } else {
            VertexKind::Reflex
        }
    }

    /// Whether the segment between vertices `i` and `j` avoids the open exterior.
    pub fn visible(&self, i: usize, j: usize) -> Result<bool, GeometryError> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return Err(GeometryError::SameVertex(i));
        }
        Ok(self.sees(i, j))
    }

    fn sees(&self, i: usize, j: usize) -> bool {
        let n = self.len();
        if (i + 1) % n == j || (j + 1) % n == i {
            return true;
        }
        let p = self.vertices[i];
        let q = self.vertices[j];
        let mut params = vec![Frac::ZERO, Frac::ONE];
        for e in 0..n {
            let (a, b) = self.edge(e);
            segment_edge_params(p, q, a, b, &mut params);
        }
        params.sort();
        params.dedup();
        params.windows(2).all(|w| {
            let (x, y, d) = point_at(p, q, w[0].midpoint(w[1]));
            self.contains_closed(x, y, d)
        })
    }

    /// Closed containment of the rational point `(x / d, y / d)`, `d > 0`.
    fn contains_closed(&self, x: i128, y: i128, d: i128) -> bool {
        let mut inside = false;
        for e in 0..self.len() {
            let (a, b) = self.edge(e);
            let (ax, ay) = (a.x as i128 * d, a.y as i128 * d);
            let (bx, by) = (b.x as i128 * d, b.y as i128 * d);
            if ax == bx {
                let (lo, hi) = (ay.min(by), ay.max(by));
                if x == ax && lo <= y && y <= hi {
                    return true;
                }
                if ((ay > y) != (by > y)) && ax > x {
                    inside = !inside;
                }
            } else {
                let (lo, hi) = (ax.min(bx), ax.max(bx));
                if y == ay && lo <= x && x <= hi {
                    return true;
                }
            }
        }
        inside
    }
}

fn boxes_touch(a: LatticePoint, b: LatticePoint, c: LatticePoint, d: LatticePoint) -> bool {
    a.x.min(b.x) <= c.x.max(d.x)
        && c.x.min(d.x) <= a.x.max(b.x)
        && a.y.min(b.y) <= c.y.max(d.y)
        && c.y.min(d.y) <= a.y.max(b.y)
}

/// Non-negative rational with positive denominator, compared exactly.
#[derive(Debug, Clone, Copy)]
struct Frac {
    num: i128,
    den: i128,
}

impl Frac {
    const ZERO: Frac = Frac { num: 0, den: 1 };
    const ONE: Frac = Frac { num: 1, den: 1 };

    fn new(num: i128, den: i128) -> Self {
        if den < 0 {
            Frac { num: -num, den: -den }
        } else {
            Frac { num, den }
        }
    }

    fn in_unit(self) -> bool {
        self.num >= 0 && self.num <= self.den
    }

    fn midpoint(self, other: Frac) -> Frac {
        Frac::new(self.num * other.den + other.num * self.den, 2 * self.den * other.den)
    }
}

impl PartialEq for Frac {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Frac {}

impl PartialOrd for Frac {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Frac {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

/// Pushes the parameters along `p -> q` where it meets the axis-parallel edge `a b`.
fn segment_edge_params(p: LatticePoint, q: LatticePoint, a: LatticePoint, b: LatticePoint, out: &mut Vec<Frac>) {
    let (px, py) = (p.x as i128, p.y as i128);
    let (dx, dy) = (q.x as i128 - px, q.y as i128 - py);
    if a.x == b.x {
        let ex = a.x as i128;
        let (lo, hi) = (a.y.min(b.y) as i128, a.y.max(b.y) as i128);
        if dx != 0 {
            let t = Frac::new(ex - px, dx);
            if t.in_unit() {
                // y = py + t * dy, compared against the edge span scaled by t.den
                let y_num = py * t.den + t.num * dy;
                if lo * t.den <= y_num && y_num <= hi * t.den {
                    out.push(t);
                }
            }
        } else if px == ex {
            for end in [lo, hi] {
                let t = Frac::new(end - py, dy);
                if t.in_unit() {
                    out.push(t);
                }
            }
        }
    } else {
        let ey = a.y as i128;
        let (lo, hi) = (a.x.min(b.x) as i128, a.x.max(b.x) as i128);
        if dy != 0 {
            let t = Frac::new(ey - py, dy);
            if t.in_unit() {
                let x_num = px * t.den + t.num * dx;
                if lo * t.den <= x_num && x_num <= hi * t.den {
                    out.push(t);
                }
            }
        } else if py == ey {
            for end in [lo, hi] {
                let t = Frac::new(end - px, dx);
                if t.in_unit() {
                    out.push(t);
                }
            }
        }
    }
}

/// The point `p + t (q - p)` as scaled integers `(x, y, d)`.
fn point_at(p: LatticePoint, q: LatticePoint, t: Frac) -> (i128, i128, i128) {
    let (px, py) = (p.x as i128, p.y as i128);
    let (dx, dy) = (q.x as i128 - px, q.y as i128 - py);
    (px * t.den + t.num * dx, py * t.den + t.num * dy, t.den)
}

/// Interior angle class of vertex `i` of `poly`.
pub fn classify_vertex_geometry(poly: &LatticePolygon, i: usize) -> Result<VertexKind, GeometryError> {
    poly.classify_vertex(i)
}

/// Exact visibility between vertices `i` and `j`.
pub fn visible(poly: &LatticePolygon, i: usize, j: usize) -> Result<bool, GeometryError> {
    poly.visible(i, j)
}

/// Brute-force visibility graph; label `i` is polygon vertex `i`.
pub fn compute_visibility_graph(poly: &LatticePolygon) -> VisGraph {
    let n = poly.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if poly.sees(i, j) {
                edges.push((i, j));
            }
        }
    }
    VisGraph::from_edges(n, &edges).expect("oracle edges are valid")
}
