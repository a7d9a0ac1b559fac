//! Recognition: reconstruct, then check the result against the input.

use serde::{Deserialize, Serialize};

use crate::geometry::{LatticePolygon, PolygonClass, VertexKind};
use crate::graph::VisGraph;
use crate::histogram::{reconstruct_double_staircase, reconstruct_histogram_counted};
use crate::iup::reconstruct_iup;
use crate::reconstruction::LabeledReconstruction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Accepted,
    Rejected,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecognitionResult {
    pub verdict: Verdict,
    /// Set when accepted: iup, histogram or double-staircase.
    pub class: Option<PolygonClass>,
    pub reconstruction: Option<LabeledReconstruction>,
    /// Why the graph was rejected, one line per class tried.
    pub reason: Option<String>,
    /// Histogram candidates tried, when the histogram path ran to acceptance.
    pub candidates_tried: Option<usize>,
}

impl RecognitionResult {
    pub fn is_accepted(&self) -> bool {
        self.verdict == Verdict::Accepted
    }

    fn rejected(reason: String) -> Self {
        Self { verdict: Verdict::Rejected, class: None, reconstruction: None, reason: Some(reason), candidates_tried: None }
    }
}

/// Classes `recognize` can be asked for.
pub const RECOGNIZABLE: [PolygonClass; 3] = [PolygonClass::Iup, PolygonClass::DoubleStaircase, PolygonClass::Histogram];

/// Decides whether `g` is the visibility graph of a polygon of the hinted
/// class, or of any supported class when no hint is given (tried in the
/// order IUP, double staircase, histogram).
pub fn recognize(g: &VisGraph, hint: Option<PolygonClass>) -> RecognitionResult {
    let classes: Vec<PolygonClass> = match hint {
        Some(c) => vec![c],
        None => RECOGNIZABLE.to_vec(),
    };
    let mut reasons = Vec::new();
    for class in classes {
        let attempt: Result<(LabeledReconstruction, Option<usize>), String> = match class {
            PolygonClass::Iup => reconstruct_iup(g).map(|r| (r, None)).map_err(|e| e.to_string()),
            PolygonClass::DoubleStaircase => reconstruct_double_staircase(g).map(|r| (r, None)).map_err(|e| e.to_string()),
            PolygonClass::Histogram => reconstruct_histogram_counted(g)
                .map(|r| (r.reconstruction, Some(r.candidates_tried)))
                .map_err(|e| e.to_string()),
            other => Err(format!("class {other} cannot be recognized")),
        };
        let (rec, count) = match attempt {
            Ok(ok) => ok,
            Err(e) => {
                reasons.push(format!("{class}: {e}"));
                continue;
            }
        };
        if !rec.verify(g) {
            reasons.push(format!("{class}: reconstruction does not reproduce the graph"));
            continue;
        }
        let found = rec.polygon.class();
        if let Err(e) = check_class(&rec.polygon, found) {
            reasons.push(format!("{class}: output fails the {found} shape check: {e}"));
            continue;
        }
        return RecognitionResult { verdict: Verdict::Accepted, class: Some(found), reconstruction: Some(rec), reason: None, candidates_tried: count };
    }
    RecognitionResult::rejected(reasons.join("; "))
}

/// Number of boundary crossings of the horizontal line `y + 1/2` (or the
/// vertical line `x + 1/2` when `vertical`).
fn crossings(poly: &LatticePolygon, at: i32, vertical: bool) -> usize {
    (0..poly.len())
        .filter(|&i| {
            let (a, b) = poly.edge(i);
            let (pa, pb) = if vertical { (a.x, b.x) } else { (a.y, b.y) };
            let (lo, hi) = (pa.min(pb), pa.max(pb));
            lo <= at && at < hi
        })
        .count()
}

/// Geometric membership test for a reconstructed polygon.
pub fn check_class(poly: &LatticePolygon, class: PolygonClass) -> Result<(), String> {
    let (lo, hi) = poly.bounding_box();
    let n = poly.len();
    let convex: Vec<bool> = (0..n).map(|i| poly.classify_vertex(i).map(|k| k == VertexKind::Convex).unwrap_or(false)).collect();
    let tabs: Vec<usize> = (0..n).filter(|&i| convex[i] && convex[(i + 1) % n]).collect();
    match class {
        PolygonClass::Iup | PolygonClass::RegularUp => {
            for y in lo.y..hi.y {
                if crossings(poly, y, false) != 2 {
                    return Err(format!("row {y} is not convex"));
                }
            }
            for x in lo.x..hi.x {
                if crossings(poly, x, true) != 2 {
                    return Err(format!("column {x} is not convex"));
                }
            }
            if tabs.len() != 4 {
                return Err(format!("{} tabs instead of 4", tabs.len()));
            }
            let runs: Vec<usize> = (0..4).map(|i| (tabs[(i + 1) % 4] + n - tabs[i]) % n).collect();
            let irregular = runs[0] != runs[1];
            if irregular != (class == PolygonClass::Iup) {
                return Err("staircase lengths do not fit the class".into());
            }
            Ok(())
        }
        PolygonClass::Histogram | PolygonClass::DoubleStaircase => {
            let base: Vec<usize> = (0..n).filter(|&i| {
                let (a, b) = poly.edge(i);
                a.y == lo.y && b.y == lo.y
            }).collect();
            if base.len() != 1 {
                return Err(format!("{} edges on the bottom row", base.len()));
            }
            for x in lo.x..hi.x {
                if crossings(poly, x, true) != 2 {
                    return Err(format!("column {x} is not a single interval"));
                }
            }
            let peaks = tabs
                .iter()
                .filter(|&&i| {
                    let (a, b) = poly.edge(i);
                    i != base[0] && a.y == b.y
                })
                .count();
            let want_single = class == PolygonClass::DoubleStaircase;
            if (peaks == 1) != want_single || peaks == 0 {
                return Err(format!("{peaks} tabs do not fit the class"));
            }
            Ok(())
        }
        PolygonClass::Generic => Ok(()),
    }
}
