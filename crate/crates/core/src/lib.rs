//! P_k-colorings of grid graphs: colorings with no path on `k` vertices
//! that uses only two colors.
//!
//! The crate covers the grid itself, colorings and their bicolored
//! components, exact path queries, the outer-face geometry of components,
//! an exact solver for the least number of colors, and a CNF export.

pub mod boundary;
pub mod coloring;
pub mod components;
pub mod grid;
pub mod paths;
pub mod sat;
pub mod solver;
pub mod suite;

pub use boundary::{
    angle_sequence, boundary_walk, check_walk_clauses, derive_dc, iterate_dc, normalized_view,
    outside_segments, partial_walks, rc_area, BoundaryError, BoundaryWalk, DcConstruction, DcTrace,
    IterationOutcome, LemmaReport, PartialWalk,
};
pub use coloring::{render_ascii, Color, Coloring, ColoringError};
pub use components::{
    bicolored_components, classify, component_containing, BicoloredComponent, Classification,
    ColorPair, ComponentClass,
};
pub use grid::{Dir, GridError, GridGraph, Side, SideSet, Symmetry, Vertex};
pub use paths::{
    has_bicolored_path, incremental_check, longest_bicolored_path, LongestReport, PairLongest,
    PathError, PathWitness,
};
pub use sat::{decode, encode, enumerate_paths, parse_model, parse_params, CnfInstance, SatError};
pub use solver::{
    chromatic_number, feasible, feasible_with, inequality_chain, pattern_coloring, solve_sk,
    Certificate, Feasibility, Limits, Outcome, SolveError, SolveReport, Status, SymmetryOptions,
};
pub use suite::{exhaustive_suite, random_suite, SuiteError, SuiteReport};
