//! The `rows × cols` grid graph `P_rows □ P_cols`.
//!
//! Vertices are addressed as `(row, col)` with `(0, 0)` at the top-left
//! corner. Row-major indices (`row * cols + col`) are used internally by the
//! search code. The planar embedding is fixed: every vertex lists its
//! neighbors clockwise as North, East, South, West, and all boundary
//! traversal chirality elsewhere in the crate is derived from that order.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("grid dimensions must be positive, got {rows}x{cols}")]
    ZeroDimension { rows: usize, cols: usize },
    #[error("symmetry {0:?} requires a square grid")]
    SquareOnly(Symmetry),
    #[error("vertex ({row},{col}) is outside the {rows}x{cols} grid")]
    OutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub row: usize,
    pub col: usize,
}

impl Vertex {
    pub const fn new(row: usize, col: usize) -> Self {
        Vertex { row, col }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// Compass directions in clockwise rotation order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dir {
    North,
    East,
    South,
    West,
}

impl Dir {
    pub const CLOCKWISE: [Dir; 4] = [Dir::North, Dir::East, Dir::South, Dir::West];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Dir {
        Dir::CLOCKWISE[i % 4]
    }

    /// Next direction in clockwise order.
    pub fn cw(self) -> Dir {
        Dir::from_index(self.index() + 1)
    }

    pub fn opposite(self) -> Dir {
        Dir::from_index(self.index() + 2)
    }

    /// Direction pointing to the left of a walker heading in `self`.
    pub fn left(self) -> Dir {
        Dir::from_index(self.index() + 3)
    }

    /// Number of clockwise quarter turns needed to go from `self` to `other`,
    /// in `0..4`.
    pub fn cw_steps_to(self, other: Dir) -> usize {
        (other.index() + 4 - self.index()) % 4
    }

    /// The grid side lying in this direction.
    pub fn side(self) -> Side {
        match self {
            Dir::North => Side::Top,
            Dir::East => Side::Right,
            Dir::South => Side::Bottom,
            Dir::West => Side::Left,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    Top,
    Right,
    Bottom,
    Left,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::Top, Side::Right, Side::Bottom, Side::Left];

    pub fn opposite(self) -> Side {
        match self {
            Side::Top => Side::Bottom,
            Side::Bottom => Side::Top,
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

/// A subset of the four grid sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SideSet(u8);

impl SideSet {
    pub const EMPTY: SideSet = SideSet(0);

    pub fn of(sides: &[Side]) -> SideSet {
        sides.iter().fold(SideSet::EMPTY, |s, &side| s.with(side))
    }

    pub fn with(self, side: Side) -> SideSet {
        SideSet(self.0 | side.bit())
    }

    pub fn insert(&mut self, side: Side) {
        self.0 |= side.bit();
    }

    pub fn contains(self, side: Side) -> bool {
        self.0 & side.bit() != 0
    }

    pub fn union(self, other: SideSet) -> SideSet {
        SideSet(self.0 | other.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = Side> {
        Side::ALL.into_iter().filter(move |&s| self.contains(s))
    }

    /// First pair of opposite sides contained in the set, if any.
    pub fn opposite_pair(self) -> Option<(Side, Side)> {
        if self.contains(Side::Top) && self.contains(Side::Bottom) {
            Some((Side::Top, Side::Bottom))
        } else if self.contains(Side::Left) && self.contains(Side::Right) {
            Some((Side::Left, Side::Right))
        } else {
            None
        }
    }
}

impl Serialize for SideSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl fmt::Display for SideSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.iter().map(|s| format!("{s:?}")).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

/// Elements of the dihedral group acting on the grid.
///
/// `Rot90`, `Rot270`, `Transpose` and `AntiTranspose` exchange the roles of
/// rows and columns, so they are automorphisms only of square grids. On a
/// non-square grid they still define a bijection onto the transposed grid,
/// which is what component normalization uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Symmetry {
    Identity,
    /// Quarter turn clockwise.
    Rot90,
    Rot180,
    Rot270,
    /// Mirror left-right.
    FlipH,
    /// Mirror top-bottom.
    FlipV,
    /// Reflection in the main diagonal.
    Transpose,
    AntiTranspose,
}

impl Symmetry {
    pub const ALL: [Symmetry; 8] = [
        Symmetry::Identity,
        Symmetry::Rot90,
        Symmetry::Rot180,
        Symmetry::Rot270,
        Symmetry::FlipH,
        Symmetry::FlipV,
        Symmetry::Transpose,
        Symmetry::AntiTranspose,
    ];

    pub fn swaps_axes(self) -> bool {
        matches!(
            self,
            Symmetry::Rot90 | Symmetry::Rot270 | Symmetry::Transpose | Symmetry::AntiTranspose
        )
    }

    pub fn inverse(self) -> Symmetry {
        match self {
            Symmetry::Rot90 => Symmetry::Rot270,
            Symmetry::Rot270 => Symmetry::Rot90,
            other => other,
        }
    }

    /// Reflections reverse the orientation of the plane.
    pub fn is_reflection(self) -> bool {
        matches!(
            self,
            Symmetry::FlipH | Symmetry::FlipV | Symmetry::Transpose | Symmetry::AntiTranspose
        )
    }

    /// Shape of the image grid.
    pub fn target_grid(self, g: GridGraph) -> GridGraph {
        if self.swaps_axes() {
            GridGraph {
                rows: g.cols,
                cols: g.rows,
            }
        } else {
            g
        }
    }

    /// Image of `v` (a vertex of `g`) in `self.target_grid(g)`.
    pub fn map(self, g: GridGraph, v: Vertex) -> Vertex {
        let (m, n) = (g.rows, g.cols);
        let (r, c) = (v.row, v.col);
        let (r2, c2) = match self {
            Symmetry::Identity => (r, c),
            Symmetry::Rot90 => (c, m - 1 - r),
            Symmetry::Rot180 => (m - 1 - r, n - 1 - c),
            Symmetry::Rot270 => (n - 1 - c, r),
            Symmetry::FlipH => (r, n - 1 - c),
            Symmetry::FlipV => (m - 1 - r, c),
            Symmetry::Transpose => (c, r),
            Symmetry::AntiTranspose => (n - 1 - c, m - 1 - r),
        };
        Vertex::new(r2, c2)
    }

    /// The symmetry group of `g`: 8 elements when square, 4 otherwise.
    pub fn group(g: GridGraph) -> Vec<Symmetry> {
        Symmetry::ALL
            .into_iter()
            .filter(|s| g.is_square() || !s.swaps_axes())
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridGraph {
    pub rows: usize,
    pub cols: usize,
}

impl GridGraph {
    pub fn new(rows: usize, cols: usize) -> Result<Self, GridError> {
        if rows == 0 || cols == 0 {
            return Err(GridError::ZeroDimension { rows, cols });
        }
        Ok(GridGraph { rows, cols })
    }

    pub fn vertex_count(&self) -> usize {
        self.rows * self.cols
    }

    pub fn edge_count(&self) -> usize {
        self.rows * (self.cols - 1) + self.cols * (self.rows - 1)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v.row < self.rows && v.col < self.cols
    }

    pub fn check(&self, v: Vertex) -> Result<(), GridError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(GridError::OutOfRange {
                row: v.row,
                col: v.col,
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn index(&self, v: Vertex) -> usize {
        v.row * self.cols + v.col
    }

    pub fn vertex(&self, i: usize) -> Vertex {
        Vertex::new(i / self.cols, i % self.cols)
    }

    /// Vertices in row-major order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.vertex_count()).map(|i| self.vertex(i))
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices().flat_map(move |v| {
            [Dir::East, Dir::South]
                .into_iter()
                .filter_map(move |d| self.step(v, d).map(|w| (v, w)))
        })
    }

    pub fn step(&self, v: Vertex, d: Dir) -> Option<Vertex> {
        match d {
            Dir::North if v.row > 0 => Some(Vertex::new(v.row - 1, v.col)),
            Dir::East if v.col + 1 < self.cols => Some(Vertex::new(v.row, v.col + 1)),
            Dir::South if v.row + 1 < self.rows => Some(Vertex::new(v.row + 1, v.col)),
            Dir::West if v.col > 0 => Some(Vertex::new(v.row, v.col - 1)),
            _ => None,
        }
    }

    /// Neighbors in the fixed clockwise order N, E, S, W.
    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        Dir::CLOCKWISE
            .into_iter()
            .filter_map(move |d| self.step(v, d))
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).count()
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        u.row.abs_diff(v.row) + u.col.abs_diff(v.col) == 1
    }

    /// Direction of the unit step from `u` to the adjacent vertex `v`.
    pub fn direction(&self, u: Vertex, v: Vertex) -> Option<Dir> {
        Dir::CLOCKWISE
            .into_iter()
            .find(|&d| self.step(u, d) == Some(v))
    }

    /// Row-major neighbor indices, sorted ascending (N, W, E, S).
    pub fn neighbor_indices(&self, i: usize) -> impl Iterator<Item = usize> {
        let (r, c, n, m) = (i / self.cols, i % self.cols, self.cols, self.rows);
        let north = (r > 0).then(|| i - n);
        let west = (c > 0).then(|| i - 1);
        let east = (c + 1 < n).then(|| i + 1);
        let south = (r + 1 < m).then(|| i + n);
        [north, west, east, south].into_iter().flatten()
    }

    pub fn sides_touched(&self, v: Vertex) -> SideSet {
        let mut s = SideSet::EMPTY;
        if v.row == 0 {
            s.insert(Side::Top);
        }
        if v.row + 1 == self.rows {
            s.insert(Side::Bottom);
        }
        if v.col == 0 {
            s.insert(Side::Left);
        }
        if v.col + 1 == self.cols {
            s.insert(Side::Right);
        }
        s
    }

    pub fn on_side(&self, v: Vertex, side: Side) -> bool {
        self.sides_touched(v).contains(side)
    }

    /// Apply an automorphism of this grid.
    pub fn apply_symmetry(&self, t: Symmetry, v: Vertex) -> Result<Vertex, GridError> {
        if t.swaps_axes() && !self.is_square() {
            return Err(GridError::SquareOnly(t));
        }
        self.check(v)?;
        Ok(t.map(*self, v))
    }
}
