//! Reconstruction and recognition of uniform-step orthogonal polygons from
//! their vertex visibility graphs.

pub mod contact_tree;
pub mod generators;
pub mod geometry;
pub mod graph;
pub mod histogram;
pub mod io;
pub mod iup;
pub mod recognize;
pub mod reconstruction;
pub mod svg;

pub use contact_tree::{ContactNode, ContactTree};
pub use generators::{GroundTruth, HistogramParams, IupParams, Staircase};
pub use geometry::{LatticePoint, LatticePolygon, PolygonClass, VertexKind};
pub use graph::{EdgeCliqueRecord, VisGraph};
pub use histogram::{reconstruct_double_staircase, reconstruct_histogram, HistogramError};
pub use iup::{reconstruct_iup, IupError};
pub use recognize::{recognize, RecognitionResult, Verdict};
pub use reconstruction::LabeledReconstruction;
