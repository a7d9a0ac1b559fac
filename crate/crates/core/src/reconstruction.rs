//! Polygons recovered from a graph, with the label placement.

use serde::{Deserialize, Serialize};

use crate::geometry::{compute_visibility_graph, GeometryError, LatticePoint, LatticePolygon, PolygonClass};
use crate::graph::{labeled_equal, VisGraph};

/// A reconstructed polygon and the position of every graph label on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledReconstruction {
    pub polygon: LatticePolygon,
    /// `coord_of[label]` is a vertex of `polygon`; the map is a bijection.
    pub coord_of: Vec<LatticePoint>,
}

impl LabeledReconstruction {
    /// Builds the polygon whose `i`-th vertex is `coords[i]` and carries label `cycle[i]`.
    pub fn from_cycle(cycle: &[usize], coords: &[LatticePoint], class: PolygonClass) -> Result<Self, GeometryError> {
        let polygon = LatticePolygon::new(coords.to_vec(), class)?;
        let mut coord_of = vec![LatticePoint::new(0, 0); cycle.len()];
        for (i, &label) in cycle.iter().enumerate() {
            coord_of[label] = coords[i];
        }
        Ok(Self { polygon, coord_of })
    }

    /// Polygon vertex index of every label, or `None` if the map is not a bijection.
    pub fn vertex_of_label(&self) -> Option<Vec<usize>> {
        let n = self.polygon.len();
        if self.coord_of.len() != n {
            return None;
        }
        let index: std::collections::HashMap<LatticePoint, usize> =
            self.polygon.vertices().iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let map: Option<Vec<usize>> = self.coord_of.iter().map(|p| index.get(p).copied()).collect();
        let map = map?;
        let mut seen = vec![false; n];
        for &i in &map {
            if std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(map)
    }

    /// Whether the oracle graph of the polygon equals `g` under the label map.
    pub fn verify(&self, g: &VisGraph) -> bool {
        if g.n() != self.polygon.len() {
            return false;
        }
        match self.vertex_of_label() {
            Some(map) => labeled_equal(g, &compute_visibility_graph(&self.polygon), &map).unwrap_or(false),
            None => false,
        }
    }

    /// Labels in boundary order.
    pub fn cycle(&self) -> Vec<usize> {
        let map = self.vertex_of_label().expect("bijective placement");
        let mut cycle = vec![0; map.len()];
        for (label, &i) in map.iter().enumerate() {
            cycle[i] = label;
        }
        cycle
    }
}
