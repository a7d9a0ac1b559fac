//! Reconstruction of histogram polygons.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::VisGraph;
use crate::reconstruction::LabeledReconstruction;

pub mod candidates;
pub mod double;
pub mod peel;
pub mod tabs;

pub use candidates::{assign_x_coordinates, fix_spines, verify_candidate, Candidate, SpineConstraints};
pub use double::reconstruct_double_staircase;
pub use peel::{peel_and_build_tree, LevelAssignment};
pub use tabs::{classify_top_bottom, find_initial_tabs, TabClique};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HistogramError {
    #[error("tab identification failed: {0}")]
    Tab(String),
    #[error("peeling failed: {0}")]
    Peel(String),
    #[error("inconsistent orientation constraints: {0}")]
    Constraint(String),
    #[error("not a double staircase: {0}")]
    NotDoubleStaircase(String),
    #[error("not a histogram visibility graph: {0}")]
    NotHistogram(String),
}

/// A successful histogram reconstruction and how much enumeration it took.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistogramReconstruction {
    pub reconstruction: LabeledReconstruction,
    /// Candidates tried, counting the accepted one. The double-staircase path builds one.
    pub candidates_tried: usize,
    /// Candidates left after spine fixing.
    pub candidate_bound: usize,
    pub tab_count: usize,
    pub binary_tree: bool,
}

/// Reconstructs a histogram, trying the double-staircase path first.
pub fn reconstruct_histogram(g: &VisGraph) -> Result<LabeledReconstruction, HistogramError> {
    reconstruct_histogram_counted(g).map(|r| r.reconstruction)
}

/// [`reconstruct_histogram`] with enumeration counters.
pub fn reconstruct_histogram_counted(g: &VisGraph) -> Result<HistogramReconstruction, HistogramError> {
    if let Ok(rec) = reconstruct_double_staircase(g) {
        if rec.verify(g) {
            return Ok(HistogramReconstruction { reconstruction: rec, candidates_tried: 1, candidate_bound: 1, tab_count: 1, binary_tree: true });
        }
    }
    general(g).map_err(|e| match e {
        HistogramError::NotHistogram(_) => e,
        other => HistogramError::NotHistogram(other.to_string()),
    })
}

fn general(g: &VisGraph) -> Result<HistogramReconstruction, HistogramError> {
    if g.n() < 8 {
        return Err(HistogramError::NotHistogram(format!("{} vertices is too few", g.n())));
    }
    let tabs = find_initial_tabs(g)?;
    if tabs.len() < 2 {
        return Err(HistogramError::NotHistogram("a single tab means a double staircase, which did not match".into()));
    }
    let is_top = classify_top_bottom(g, &tabs);
    let (tree, _levels) = peel_and_build_tree(g, &tabs, &is_top)?;
    if tree.leaves().len() != tabs.len() {
        return Err(HistogramError::Peel(format!("{} leaves for {} tabs", tree.leaves().len(), tabs.len())));
    }
    let spines = fix_spines(g, &tree);
    let bound = spines.candidate_count();
    let mut tried = 0;
    let mut last_shape: Option<(Vec<Vec<usize>>, candidates::CandidateShape)> = None;
    let mut reasons = Vec::new();
    for digits in candidates::digit_vectors(&spines.radix) {
        tried += 1;
        let cand = match candidates::decode_candidate(&tree, &spines, &digits) {
            Ok(c) => c,
            Err(e) => {
                reasons.push(e);
                continue;
            }
        };
        let reuse = matches!(&last_shape, Some((order, _)) if *order == cand.child_order);
        if !reuse {
            let shape = candidates::candidate_shape(&tree, &cand).map_err(HistogramError::Constraint)?;
            last_shape = Some((cand.child_order.clone(), shape));
        }
        let shape = &last_shape.as_ref().unwrap().1;
        match assign_x_coordinates(g, &tree, &cand, shape) {
            Ok(place) if verify_candidate(g, shape, &place) => {
                let rec = candidates::placement_reconstruction(shape, &place);
                debug_assert!(rec.verify(g));
                return Ok(HistogramReconstruction {
                    reconstruction: rec,
                    candidates_tried: tried,
                    candidate_bound: bound,
                    tab_count: tabs.len(),
                    binary_tree: tree.is_binary(),
                });
            }
            Ok(_) => reasons.push("placement does not reproduce the graph".into()),
            Err(e) => reasons.push(e),
        }
    }
    Err(HistogramError::NotHistogram(format!(
        "all {tried} candidates rejected; first reason: {}",
        reasons.first().map(String::as_str).unwrap_or("none")
    )))
}
