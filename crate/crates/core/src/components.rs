//! Bicolored components: maximal connected vertex sets whose colors all lie
//! in a fixed color pair, and their classification by the grid sides they
//! touch.

use std::collections::VecDeque;

use serde::Serialize;

use crate::coloring::{Color, Coloring};
use crate::grid::{GridGraph, Side, SideSet, Symmetry, Vertex};

/// Unordered color pair, stored with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ColorPair {
    pub lo: Color,
    pub hi: Color,
}

impl ColorPair {
    /// Returns `None` when `a == b`.
    pub fn new(a: Color, b: Color) -> Option<ColorPair> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some(ColorPair { lo: a, hi: b }),
            std::cmp::Ordering::Greater => Some(ColorPair { lo: b, hi: a }),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn contains(self, c: Color) -> bool {
        c == self.lo || c == self.hi
    }

    /// The member of the pair that is not `c`.
    pub fn other(self, c: Color) -> Color {
        if c == self.lo {
            self.hi
        } else {
            self.lo
        }
    }

    /// All pairs drawn from `0..palette`, lexicographically.
    pub fn all(palette: Color) -> impl Iterator<Item = ColorPair> {
        (0..palette).flat_map(move |a| (a + 1..palette).map(move |b| ColorPair { lo: a, hi: b }))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ComponentClass {
    /// Touches two opposite sides.
    Peripheral,
    /// Not peripheral; touches exactly one side.
    PartialType1,
    /// Not peripheral; touches two adjacent sides.
    PartialType2,
    /// Touches no side.
    Interior,
}

impl ComponentClass {
    pub fn is_partial(self) -> bool {
        matches!(
            self,
            ComponentClass::PartialType1 | ComponentClass::PartialType2
        )
    }

    pub fn touches_side(self) -> bool {
        self != ComponentClass::Interior
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub class: ComponentClass,
    pub touched_sides: SideSet,
    /// For partial components, the first symmetry (in [`Symmetry::ALL`]
    /// order) that moves the touched sides onto `{Top}` or `{Top, Left}`.
    pub normalization: Option<Symmetry>,
    /// For peripheral components, the opposite pair that was found.
    pub opposite_sides: Option<(Side, Side)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BicoloredComponent {
    pub pair: ColorPair,
    /// Sorted row-major.
    pub vertices: Vec<Vertex>,
    /// False when the component has no edge joining both colors (a single
    /// vertex, or a single color class).
    pub truly_bicolored: bool,
    #[serde(flatten)]
    pub classification: Classification,
}

impl BicoloredComponent {
    pub fn class(&self) -> ComponentClass {
        self.classification.class
    }

    pub fn touched_sides(&self) -> SideSet {
        self.classification.touched_sides
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Membership mask indexed row-major over `grid`.
    pub fn mask(&self, grid: GridGraph) -> Vec<bool> {
        let mut m = vec![false; grid.vertex_count()];
        for &v in &self.vertices {
            m[grid.index(v)] = true;
        }
        m
    }
}

pub fn sides_of(grid: GridGraph, vertices: &[Vertex]) -> SideSet {
    vertices
        .iter()
        .fold(SideSet::EMPTY, |s, &v| s.union(grid.sides_touched(v)))
}

/// Classify a vertex set of `grid` by the sides it touches.
pub fn classify(grid: GridGraph, vertices: &[Vertex]) -> Classification {
    let touched = sides_of(grid, vertices);
    if let Some(pair) = touched.opposite_pair() {
        return Classification {
            class: ComponentClass::Peripheral,
            touched_sides: touched,
            normalization: None,
            opposite_sides: Some(pair),
        };
    }
    let (class, target) = match touched.len() {
        0 => {
            return Classification {
                class: ComponentClass::Interior,
                touched_sides: touched,
                normalization: None,
                opposite_sides: None,
            }
        }
        1 => (ComponentClass::PartialType1, SideSet::of(&[Side::Top])),
        _ => (
            ComponentClass::PartialType2,
            SideSet::of(&[Side::Top, Side::Left]),
        ),
    };
    let normalization = Symmetry::ALL.into_iter().find(|&t| {
        let image = t.target_grid(grid);
        let moved: Vec<Vertex> = vertices.iter().map(|&v| t.map(grid, v)).collect();
        sides_of(image, &moved) == target
    });
    debug_assert!(normalization.is_some());
    Classification {
        class,
        touched_sides: touched,
        normalization,
        opposite_sides: None,
    }
}

/// Partition the vertices colored in `pair` into maximal connected sets.
///
/// Components are listed in order of their smallest vertex; single-color
/// components are kept with `truly_bicolored == false`.
pub fn bicolored_components(col: &Coloring, pair: ColorPair) -> Vec<BicoloredComponent> {
    let grid = col.grid();
    let mut seen = vec![false; grid.vertex_count()];
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..grid.vertex_count() {
        if seen[start] || !pair.contains(col.color_at(start)) {
            continue;
        }
        seen[start] = true;
        queue.push_back(start);
        let mut members = Vec::new();
        let mut truly = false;
        while let Some(i) = queue.pop_front() {
            members.push(i);
            for j in grid.neighbor_indices(i) {
                let cj = col.color_at(j);
                if !pair.contains(cj) {
                    continue;
                }
                if cj != col.color_at(i) {
                    truly = true;
                }
                if !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        members.sort_unstable();
        let vertices: Vec<Vertex> = members.into_iter().map(|i| grid.vertex(i)).collect();
        let classification = classify(grid, &vertices);
        out.push(BicoloredComponent {
            pair,
            vertices,
            truly_bicolored: truly,
            classification,
        });
    }
    out
}

/// The component of `pair` containing `v`, if `v` is colored in `pair`.
pub fn component_containing(
    col: &Coloring,
    pair: ColorPair,
    v: Vertex,
) -> Option<BicoloredComponent> {
    if !pair.contains(col.color(v)) {
        return None;
    }
    bicolored_components(col, pair)
        .into_iter()
        .find(|c| c.contains(v))
}

/// Rebuild a component from a vertex set that is known to be one.
pub(crate) fn component_from_vertices(
    col: &Coloring,
    pair: ColorPair,
    mut vertices: Vec<Vertex>,
) -> BicoloredComponent {
    let grid = col.grid();
    vertices.sort_unstable();
    let truly = vertices.iter().any(|&v| {
        grid.neighbors(v)
            .any(|w| vertices.binary_search(&w).is_ok() && col.color(w) != col.color(v))
    });
    let classification = classify(grid, &vertices);
    BicoloredComponent {
        pair,
        vertices,
        truly_bicolored: truly,
        classification,
    }
}
