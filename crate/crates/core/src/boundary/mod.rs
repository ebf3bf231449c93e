//! Outer-face geometry of bicolored components.
//!
//! Everything here follows from the grid's clockwise rotation system
//! (N, E, S, W). A boundary walk traces the outer face of a component with
//! the face on the walker's left; a partial walk is a maximal piece of it
//! during which the walker's left hand never leaves the grid rectangle.
//!
//! Angles are measured on the walker's left: at a walk vertex, the angle is
//! the clockwise sweep from the ray back to the previous vertex to the ray
//! toward the next one, so left turns read 90, straight 180, right turns
//! 270 and backtracks 360.

mod iterate;
mod lemma;
mod region;
mod walk;

use thiserror::Error;

use crate::grid::Vertex;

pub use iterate::{iterate_dc, DcTrace, IterationOutcome, TraceStep};
pub use lemma::{check_walk_clauses, derive_dc, ClauseResult, DcConstruction, LemmaReport};
pub use region::rc_area;
pub use walk::{
    angle_sequence, boundary_walk, normalized_view, outside_segments, partial_walks, BoundaryWalk,
    NormalizedView, OutsideSegment, PartialWalk,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundaryError {
    #[error("component touches no grid side, so it has no partial walk")]
    Interior,
    #[error("partial walk has {0} vertices; angles need at least 3")]
    TooShort(usize),
    #[error("lemma checks need a 3-color palette, got {0}")]
    NotThreeColors(u8),
    #[error("coloring is not proper at edge {0}-{1}")]
    Improper(Vertex, Vertex),
    #[error("component has no edge joining both colors")]
    NotBicolored,
    #[error("component is a single edge, which the lemma premise excludes")]
    SingleEdge,
    #[error("clause {clause} fails: {detail}")]
    ClauseFailed { clause: usize, detail: String },
    #[error("fourth corner {vertex} of square {index} has color {color}, expected {expected}")]
    NotThirdColor {
        index: usize,
        vertex: Vertex,
        color: u8,
        expected: u8,
    },
    #[error("walk vertices {0} and {1} are not adjacent")]
    Inconsistent(Vertex, Vertex),
    #[error("walk endpoint {0} is not on the grid boundary")]
    Open(Vertex),
    #[error("peripheral components have no enclosed region")]
    Peripheral,
}
