//! File formats: graphs as edge lists or JSON, polygons and label maps as JSON.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{GeometryError, LatticePoint, LatticePolygon, PolygonClass};
use crate::graph::{GraphError, VisGraph};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("empty input")]
    Empty,
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format version {0}")]
    Version(u32),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("bad map: {0}")]
    Map(String),
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// Parses either the `n m` edge-list text or `{"n": .., "edges": [[u, v], ..]}`.
pub fn parse_graph(text: &str) -> Result<VisGraph, FormatError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(FormatError::Empty);
    }
    if trimmed.starts_with('{') {
        let parsed: GraphJson = serde_json::from_str(trimmed)?;
        return Ok(VisGraph::from_edges(parsed.n, &parsed.edges)?);
    }
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let numbers = |(i, l): (usize, &str)| -> Result<(usize, usize), FormatError> {
        let fields: Vec<&str> = l.split_whitespace().collect();
        let bad = |msg: String| FormatError::Line { line: i + 1, msg };
        let [a, b] = fields[..] else {
            return Err(bad(format!("expected two integers, found {} fields", fields.len())));
        };
        let a = a.parse().map_err(|e| bad(format!("{a:?}: {e}")))?;
        let b = b.parse().map_err(|e| bad(format!("{b:?}: {e}")))?;
        Ok((a, b))
    };
    let (n, m) = numbers(lines.next().ok_or(FormatError::Empty)?)?;
    let edges: Vec<(usize, usize)> = lines.map(numbers).collect::<Result<_, _>>()?;
    if edges.len() != m {
        return Err(FormatError::Line { line: 1, msg: format!("header promises {m} edges, found {}", edges.len()) });
    }
    Ok(VisGraph::from_edges(n, &edges)?)
}

/// Edge-list text with edges sorted.
pub fn write_graph(g: &VisGraph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[derive(Serialize, Deserialize)]
struct PolygonJson {
    #[serde(default = "default_format")]
    format: u32,
    class: PolygonClass,
    vertices: Vec<(i32, i32)>,
}

fn default_format() -> u32 {
    FORMAT_VERSION
}

pub fn parse_polygon(text: &str) -> Result<LatticePolygon, FormatError> {
    if text.trim().is_empty() {
        return Err(FormatError::Empty);
    }
    let parsed: PolygonJson = serde_json::from_str(text)?;
    if parsed.format != FORMAT_VERSION {
        return Err(FormatError::Version(parsed.format));
    }
    let vertices = parsed.vertices.into_iter().map(LatticePoint::from).collect();
    Ok(LatticePolygon::new(vertices, parsed.class)?)
}

pub fn write_polygon(poly: &LatticePolygon) -> String {
    let body = PolygonJson {
        format: FORMAT_VERSION,
        class: poly.class(),
        vertices: poly.vertices().iter().map(|p| (p.x, p.y)).collect(),
    };
    serde_json::to_string(&body).expect("plain data serializes") + "\n"
}

#[derive(Serialize, Deserialize)]
struct MapJson {
    #[serde(default = "default_format")]
    format: u32,
    coords: BTreeMap<String, (i32, i32)>,
}

/// `{"format": 1, "coords": {"<label>": [x, y], ..}}`, labels in numeric order.
pub fn write_map(coord_of: &[LatticePoint]) -> String {
    let mut out = String::from("{\"format\":1,\"coords\":{");
    for (label, p) in coord_of.iter().enumerate() {
        if label > 0 {
            out.push(',');
        }
        out.push_str(&format!("\"{label}\":[{},{}]", p.x, p.y));
    }
    out.push_str("}}\n");
    out
}

pub fn parse_map(text: &str) -> Result<Vec<LatticePoint>, FormatError> {
    if text.trim().is_empty() {
        return Err(FormatError::Empty);
    }
    let parsed: MapJson = serde_json::from_str(text)?;
    if parsed.format != FORMAT_VERSION {
        return Err(FormatError::Version(parsed.format));
    }
    let n = parsed.coords.len();
    let mut coords = vec![None; n];
    for (key, xy) in parsed.coords {
        let label: usize = key.parse().map_err(|_| FormatError::Map(format!("label {key:?} is not an integer")))?;
        let slot = coords.get_mut(label).ok_or_else(|| FormatError::Map(format!("label {label} out of range for {n} labels")))?;
        *slot = Some(LatticePoint::from(xy));
    }
    coords.into_iter().enumerate().map(|(i, c)| c.ok_or_else(|| FormatError::Map(format!("label {i} missing")))).collect()
}
