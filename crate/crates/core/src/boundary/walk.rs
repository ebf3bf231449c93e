use serde::Serialize;

use super::BoundaryError;
use crate::coloring::Coloring;
use crate::components::{classify, component_from_vertices, BicoloredComponent, ComponentClass};
use crate::grid::{Dir, GridGraph, Side, Symmetry, Vertex};

/// Clockwise traversal of a component's outer face.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryWalk {
    /// Closed vertex sequence: the last vertex repeats the first. A
    /// single-vertex component gives `[v]`.
    pub vertices: Vec<Vertex>,
}

impl BoundaryWalk {
    /// Number of steps (directed edges) in the closed walk.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn directions(&self) -> Vec<Dir> {
        self.vertices
            .windows(2)
            .map(|w| dir_between(w[0], w[1]).expect("walk steps are unit steps"))
            .collect()
    }

    /// Incoming-reversed and outgoing directions at cyclic position `pos`.
    fn turn_at(&self, pos: usize) -> (Dir, Dir) {
        let n = self.len();
        let v = self.vertices[pos];
        let prev = self.vertices[(pos + n - 1) % n];
        let next = self.vertices[pos + 1];
        (
            dir_between(v, prev).expect("unit step"),
            dir_between(v, next).expect("unit step"),
        )
    }
}

pub(crate) fn dir_between(u: Vertex, v: Vertex) -> Option<Dir> {
    match (
        v.row as isize - u.row as isize,
        v.col as isize - u.col as isize,
    ) {
        (-1, 0) => Some(Dir::North),
        (0, 1) => Some(Dir::East),
        (1, 0) => Some(Dir::South),
        (0, -1) => Some(Dir::West),
        _ => None,
    }
}

/// Trace the outer face of `comp` clockwise, starting from its smallest
/// vertex. At every vertex the walk leaves along the first component edge
/// found by rotating clockwise from the edge it arrived on.
pub fn boundary_walk(grid: GridGraph, comp: &BicoloredComponent) -> BoundaryWalk {
    let mask = comp.mask(grid);
    let inside = |v: Vertex| mask[grid.index(v)];
    let start = comp.vertices[0];
    // The smallest vertex has nothing above it, so its outer-face corner
    // contains North; pretend we arrived from there.
    let Some(first) = next_dir(grid, &inside, start, Dir::North) else {
        return BoundaryWalk {
            vertices: vec![start],
        };
    };
    let mut vertices = vec![start];
    let (mut cur, mut dir) = (start, first);
    loop {
        let nxt = grid.step(cur, dir).expect("component edge");
        vertices.push(nxt);
        let out = next_dir(grid, &inside, nxt, dir.opposite()).expect("arrived on an edge");
        if nxt == start && out == first {
            break;
        }
        cur = nxt;
        dir = out;
    }
    BoundaryWalk { vertices }
}

fn next_dir(
    grid: GridGraph,
    inside: &impl Fn(Vertex) -> bool,
    v: Vertex,
    back: Dir,
) -> Option<Dir> {
    let mut d = back;
    for _ in 0..4 {
        d = d.cw();
        if grid.step(v, d).is_some_and(inside) {
            return Some(d);
        }
    }
    None
}

/// Whether the walker's left hand leaves the rectangle while turning at `v`
/// from the ray `back` clockwise to the ray `out`.
fn sweep_leaves_grid(grid: GridGraph, v: Vertex, back: Dir, out: Dir) -> bool {
    let mut d = back.cw();
    while d != out {
        if grid.step(v, d).is_none() {
            return true;
        }
        d = d.cw();
    }
    // a backtrack sweeps the three other directions and stops at `back`
    false
}

/// A step lying on a grid side with the walker's left normal pointing out.
fn step_outside(grid: GridGraph, u: Vertex, v: Vertex) -> bool {
    let left = dir_between(u, v).expect("unit step").left();
    grid.step(u, left).is_none() && grid.step(v, left).is_none()
}

fn outside_positions(grid: GridGraph, walk: &BoundaryWalk) -> Vec<bool> {
    (0..walk.len())
        .map(|p| {
            let (back, out) = walk.turn_at(p);
            sweep_leaves_grid(grid, walk.vertices[p], back, out)
        })
        .collect()
}

/// A maximal stretch of the boundary walk along which the walker's left
/// hand is outside the grid. A segment may be a single vertex where the
/// walk turns around a vertex on a grid side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OutsideSegment {
    /// Position of the first vertex in the closed walk.
    pub start_position: usize,
    pub vertices: Vec<Vertex>,
}

pub fn outside_segments(grid: GridGraph, walk: &BoundaryWalk) -> Vec<OutsideSegment> {
    let n = walk.len();
    if n == 0 {
        return Vec::new();
    }
    let outside = outside_positions(grid, walk);
    let step_out: Vec<bool> = (0..n)
        .map(|p| step_outside(grid, walk.vertices[p], walk.vertices[p + 1]))
        .collect();
    let joined_from_prev = |p: usize| {
        let q = (p + n - 1) % n;
        outside[q] && step_out[q]
    };
    if (0..n).all(|p| outside[p] && step_out[p]) {
        return vec![OutsideSegment {
            start_position: 0,
            vertices: walk.vertices.clone(),
        }];
    }
    let mut segments = Vec::new();
    for p in 0..n {
        if !outside[p] || joined_from_prev(p) {
            continue;
        }
        let mut vertices = vec![walk.vertices[p]];
        let mut q = p;
        while step_out[q] {
            q = (q + 1) % n;
            vertices.push(walk.vertices[q]);
        }
        segments.push(OutsideSegment {
            start_position: p,
            vertices,
        });
    }
    segments
}

/// A maximal boundary subwalk containing no outside segment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartialWalk {
    pub vertices: Vec<Vertex>,
    /// Position of `vertices[0]` in the closed boundary walk.
    pub start_position: usize,
}

impl PartialWalk {
    pub fn r(&self) -> usize {
        self.vertices.len()
    }

    pub fn first(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn last(&self) -> Vertex {
        *self.vertices.last().unwrap()
    }
}

/// Split the boundary walk at every point where the walker's left hand
/// leaves the grid.
///
/// For a partial component the walk starting at the rightmost top-side
/// vertex is listed first (this is only meaningful in a normalized frame,
/// see [`normalized_view`]); otherwise walks are listed in traversal order
/// from the walk origin.
pub fn partial_walks(
    grid: GridGraph,
    comp: &BicoloredComponent,
    walk: &BoundaryWalk,
) -> Result<Vec<PartialWalk>, BoundaryError> {
    let cls = classify(grid, &comp.vertices);
    if cls.class == ComponentClass::Interior {
        return Err(BoundaryError::Interior);
    }
    let n = walk.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let outside = outside_positions(grid, walk);
    let breaks: Vec<usize> = (0..n).filter(|&p| outside[p]).collect();
    if breaks.is_empty() {
        return Err(BoundaryError::Interior);
    }
    let mut walks = Vec::new();
    for (j, &b) in breaks.iter().enumerate() {
        let e = if j + 1 < breaks.len() {
            breaks[j + 1]
        } else {
            breaks[0] + n
        };
        let vertices: Vec<Vertex> = (b..=e).map(|p| walk.vertices[p % n]).collect();
        if e == b + 1 && step_outside(grid, vertices[0], vertices[1]) {
            continue;
        }
        walks.push(PartialWalk {
            vertices,
            start_position: b,
        });
    }
    if cls.class.is_partial() && cls.touched_sides.contains(Side::Top) {
        let v1 = comp
            .vertices
            .iter()
            .filter(|v| v.row == 0)
            .max_by_key(|v| v.col)
            .copied();
        if let Some(i) = walks.iter().position(|w| Some(w.first()) == v1) {
            walks.rotate_left(i);
        }
    }
    Ok(walks)
}

/// Angles (in degrees) at `v_2, ..., v_{r-1}` of a partial walk.
pub fn angle_sequence(pw: &PartialWalk) -> Result<Vec<u16>, BoundaryError> {
    if pw.r() < 3 {
        return Err(BoundaryError::TooShort(pw.r()));
    }
    Ok(pw
        .vertices
        .windows(3)
        .map(|w| {
            let back = dir_between(w[1], w[0]).expect("unit step");
            let out = dir_between(w[1], w[2]).expect("unit step");
            match back.cw_steps_to(out) {
                0 => 360,
                q => 90 * q as u16,
            }
        })
        .collect())
}

/// A component moved into the frame where its sides are `{Top}` or
/// `{Top, Left}` (identity for peripheral components).
#[derive(Debug, Clone)]
pub struct NormalizedView {
    pub symmetry: Symmetry,
    pub coloring: Coloring,
    pub component: BicoloredComponent,
}

impl NormalizedView {
    pub fn grid(&self) -> GridGraph {
        self.coloring.grid()
    }

    /// Map a vertex of the normalized frame back to the original grid.
    pub fn to_original(&self, v: Vertex) -> Vertex {
        self.symmetry.inverse().map(self.grid(), v)
    }
}

pub fn normalized_view(col: &Coloring, comp: &BicoloredComponent) -> NormalizedView {
    let t = comp
        .classification
        .normalization
        .unwrap_or(Symmetry::Identity);
    let coloring = col.transformed(t);
    let moved = comp
        .vertices
        .iter()
        .map(|&v| t.map(col.grid(), v))
        .collect();
    let component = component_from_vertices(&coloring, comp.pair, moved);
    NormalizedView {
        symmetry: t,
        coloring,
        component,
    }
}
