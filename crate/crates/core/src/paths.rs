//! Exact bicolored-path queries on colored grids.
//!
//! Under a proper coloring a path whose vertices use at most two colors
//! alternates between them, so every search here runs directly on the
//! subgraph induced by one color pair.

use serde::Serialize;
use thiserror::Error;

use crate::coloring::{Color, Coloring};
use crate::components::ColorPair;
use crate::grid::{GridGraph, Vertex};

/// Marks an uncolored vertex in partial colorings.
pub(crate) const UNCOLORED: Color = Color::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("path order k must be at least 3, got {0}")]
    OrderTooSmall(usize),
    #[error("coloring is not proper: edge {0}-{1} is monochromatic")]
    Improper(Vertex, Vertex),
    #[error("node budget of {budget} expansions exhausted")]
    BudgetExceeded { budget: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathWitness {
    pub vertices: Vec<Vertex>,
    pub pair: ColorPair,
}

impl PathWitness {
    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    /// Re-check the witness against `col` without trusting how it was made.
    pub fn is_valid_for(&self, col: &Coloring) -> bool {
        let g = col.grid();
        let vs = &self.vertices;
        let mut seen = vec![false; g.vertex_count()];
        for v in vs {
            if !g.contains(*v) || std::mem::replace(&mut seen[g.index(*v)], true) {
                return false;
            }
            if !self.pair.contains(col.color(*v)) {
                return false;
            }
        }
        vs.windows(2)
            .all(|w| g.adjacent(w[0], w[1]) && col.color(w[0]) != col.color(w[1]))
    }
}

fn require_proper(col: &Coloring) -> Result<(), PathError> {
    match col.monochromatic_edge() {
        Some((u, v)) => Err(PathError::Improper(u, v)),
        None => Ok(()),
    }
}

struct PairSearch<'a> {
    grid: GridGraph,
    colors: &'a [Color],
    pair: ColorPair,
    visited: Vec<bool>,
    path: Vec<usize>,
}

impl<'a> PairSearch<'a> {
    fn new(grid: GridGraph, colors: &'a [Color], pair: ColorPair) -> Self {
        PairSearch {
            grid,
            colors,
            pair,
            visited: vec![false; grid.vertex_count()],
            path: Vec::new(),
        }
    }

    fn in_pair(&self, i: usize) -> bool {
        self.pair.contains(self.colors[i])
    }

    /// Extend `self.path` until it has `k` vertices; neighbors are tried in
    /// ascending index order so the first hit is lexicographically least.
    fn extend_to(&mut self, k: usize) -> bool {
        if self.path.len() >= k {
            return true;
        }
        let cur = *self.path.last().unwrap();
        for nb in self.grid.neighbor_indices(cur) {
            if self.visited[nb] || !self.in_pair(nb) {
                continue;
            }
            self.visited[nb] = true;
            self.path.push(nb);
            if self.extend_to(k) {
                return true;
            }
            self.path.pop();
            self.visited[nb] = false;
        }
        false
    }

    fn first_path(&mut self, k: usize) -> Option<Vec<usize>> {
        for start in 0..self.grid.vertex_count() {
            if !self.in_pair(start) {
                continue;
            }
            self.visited[start] = true;
            self.path.push(start);
            if self.extend_to(k) {
                return Some(std::mem::take(&mut self.path));
            }
            self.path.clear();
            self.visited[start] = false;
        }
        None
    }
}

/// A bicolored path on `k` vertices, if the proper coloring `col` has one.
///
/// The witness is the lexicographically least such path (compared as
/// row-major vertex sequences) over all color pairs.
pub fn has_bicolored_path(col: &Coloring, k: usize) -> Result<Option<PathWitness>, PathError> {
    if k < 3 {
        return Err(PathError::OrderTooSmall(k));
    }
    require_proper(col)?;
    let grid = col.grid();
    let best = ColorPair::all(col.palette())
        .filter_map(|pair| {
            PairSearch::new(grid, col.colors(), pair)
                .first_path(k)
                .map(|p| (p, pair))
        })
        .min();
    Ok(best.map(|(p, pair)| PathWitness {
        vertices: p.into_iter().map(|i| grid.vertex(i)).collect(),
        pair,
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairLongest {
    pub pair: ColorPair,
    /// Maximum number of vertices on a simple path inside the pair; 0 when
    /// no vertex carries either color.
    pub order: usize,
    pub witness: Option<PathWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LongestReport {
    pub per_pair: Vec<PairLongest>,
    pub overall: usize,
    pub expansions: u64,
}

struct LongestSearch<'a> {
    inner: PairSearch<'a>,
    best: Vec<usize>,
    bound: usize,
    expansions: u64,
    budget: u64,
}

impl LongestSearch<'_> {
    fn explore(&mut self) -> Result<bool, PathError> {
        if self.inner.path.len() > self.best.len() {
            self.best = self.inner.path.clone();
            if self.best.len() >= self.bound {
                return Ok(true);
            }
        }
        let cur = *self.inner.path.last().unwrap();
        for nb in self.inner.grid.neighbor_indices(cur) {
            if self.inner.visited[nb] || !self.inner.in_pair(nb) {
                continue;
            }
            self.expansions += 1;
            if self.expansions > self.budget {
                return Err(PathError::BudgetExceeded {
                    budget: self.budget,
                });
            }
            self.inner.visited[nb] = true;
            self.inner.path.push(nb);
            let done = self.explore()?;
            self.inner.path.pop();
            self.inner.visited[nb] = false;
            if done {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Longest bicolored simple path for every color pair, exact within a
/// node-expansion `budget`.
///
/// Pairs are drawn from `0..max(palette, 2)`, so a single-vertex grid
/// still reports order 1 for pair `{0,1}`.
pub fn longest_bicolored_path(col: &Coloring, budget: u64) -> Result<LongestReport, PathError> {
    require_proper(col)?;
    let grid = col.grid();
    let mut per_pair = Vec::new();
    let mut expansions = 0;
    for pair in ColorPair::all(col.palette().max(2)) {
        let comps = crate::components::bicolored_components(col, pair);
        let mut best: Vec<usize> = Vec::new();
        for comp in &comps {
            if comp.len() <= best.len() {
                continue;
            }
            let mut search = LongestSearch {
                inner: PairSearch::new(grid, col.colors(), pair),
                best: best.clone(),
                bound: comp.len(),
                expansions,
                budget,
            };
            for &v in &comp.vertices {
                let start = grid.index(v);
                search.inner.visited[start] = true;
                search.inner.path.push(start);
                let done = search.explore()?;
                search.inner.path.clear();
                search.inner.visited[start] = false;
                if done {
                    break;
                }
            }
            expansions = search.expansions;
            best = search.best;
        }
        per_pair.push(PairLongest {
            pair,
            order: best.len(),
            witness: (!best.is_empty()).then(|| PathWitness {
                vertices: best.iter().map(|&i| grid.vertex(i)).collect(),
                pair,
            }),
        });
    }
    let overall = per_pair.iter().map(|p| p.order).max().unwrap_or(0);
    Ok(LongestReport {
        per_pair,
        overall,
        expansions,
    })
}

/// Search state for "is there a bicolored path of order >= k through v" in a
/// partial coloring. Reused across calls to avoid reallocating.
pub(crate) struct ThroughVertex {
    visited: Vec<bool>,
}

impl ThroughVertex {
    pub(crate) fn new(grid: GridGraph) -> Self {
        ThroughVertex {
            visited: vec![false; grid.vertex_count()],
        }
    }

    /// True if some bicolored path with at least `k` vertices passes through
    /// `v`. Uncolored vertices are marked [`UNCOLORED`].
    pub(crate) fn reaches(
        &mut self,
        grid: GridGraph,
        colors: &[Color],
        v: usize,
        k: usize,
    ) -> bool {
        let cv = colors[v];
        if cv == UNCOLORED {
            return false;
        }
        let mut tried = [false; 256];
        for nb in grid.neighbor_indices(v) {
            let c = colors[nb];
            if c == UNCOLORED || c == cv || tried[c as usize] {
                continue;
            }
            tried[c as usize] = true;
            let pair = ColorPair::new(cv, c).unwrap();
            self.visited[v] = true;
            let hit = self.first_arm(grid, colors, pair, v, v, 1, k);
            self.visited[v] = false;
            if hit {
                return true;
            }
        }
        false
    }

    /// Enumerate the first arm of the path (ending at `cur`); for each arm,
    /// look for a disjoint second arm leaving `v`.
    #[allow(clippy::too_many_arguments)]
    fn first_arm(
        &mut self,
        grid: GridGraph,
        colors: &[Color],
        pair: ColorPair,
        v: usize,
        cur: usize,
        len: usize,
        k: usize,
    ) -> bool {
        if len >= k || self.second_arm(grid, colors, pair, v, k - len) {
            return true;
        }
        for nb in grid.neighbor_indices(cur) {
            if self.visited[nb] || !pair.contains(colors[nb]) {
                continue;
            }
            self.visited[nb] = true;
            let hit = self.first_arm(grid, colors, pair, v, nb, len + 1, k);
            self.visited[nb] = false;
            if hit {
                return true;
            }
        }
        false
    }

    fn second_arm(
        &mut self,
        grid: GridGraph,
        colors: &[Color],
        pair: ColorPair,
        cur: usize,
        need: usize,
    ) -> bool {
        if need == 0 {
            return true;
        }
        for nb in grid.neighbor_indices(cur) {
            if self.visited[nb] || !pair.contains(colors[nb]) {
                continue;
            }
            self.visited[nb] = true;
            let hit = self.second_arm(grid, colors, pair, nb, need - 1);
            self.visited[nb] = false;
            if hit {
                return true;
            }
        }
        false
    }
}

/// Pruning predicate for partial colorings: true iff no bicolored path of
/// order at least `k` passes through the just-colored vertex `v`.
///
/// Colored vertices are assumed to be properly colored so far.
pub fn incremental_check(grid: GridGraph, colors: &[Option<Color>], v: Vertex, k: usize) -> bool {
    let raw: Vec<Color> = colors.iter().map(|c| c.unwrap_or(UNCOLORED)).collect();
    !ThroughVertex::new(grid).reaches(grid, &raw, grid.index(v), k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(palette: Color, rows: &[&[Color]]) -> Coloring {
        let rows: Vec<Vec<Color>> = rows.iter().map(|r| r.to_vec()).collect();
        Coloring::from_rows(palette, &rows).unwrap()
    }

    #[test]
    fn alternating_row_is_a_witness() {
        let col = rows(2, &[&[0, 1, 0, 1, 0]]);
        let w = has_bicolored_path(&col, 5).unwrap().unwrap();
        assert_eq!(w.order(), 5);
        assert_eq!(w.vertices[0], Vertex::new(0, 0));
        assert!(w.is_valid_for(&col));
    }

    #[test]
    fn pattern_on_two_rows_is_p5_free() {
        let col = rows(3, &[&[0, 1, 2, 0, 1, 2, 0, 1], &[1, 2, 0, 1, 2, 0, 1, 2]]);
        assert_eq!(has_bicolored_path(&col, 5).unwrap(), None);
        assert!(has_bicolored_path(&col, 4).unwrap().is_some());
    }

    #[test]
    fn ring_has_p5() {
        let col = rows(3, &[&[0, 1, 0], &[1, 2, 1], &[0, 1, 0]]);
        let w = has_bicolored_path(&col, 5).unwrap().unwrap();
        assert!(w.is_valid_for(&col));
        assert_eq!(
            w.vertices,
            vec![
                Vertex::new(0, 0),
                Vertex::new(0, 1),
                Vertex::new(0, 2),
                Vertex::new(1, 2),
                Vertex::new(2, 2)
            ]
        );
        assert!(has_bicolored_path(&col, 8).unwrap().is_some());
        assert!(has_bicolored_path(&col, 9).unwrap().is_none());
    }

    #[test]
    fn errors() {
        let col = rows(2, &[&[0, 0]]);
        assert_eq!(
            has_bicolored_path(&col, 3),
            Err(PathError::Improper(Vertex::new(0, 0), Vertex::new(0, 1)))
        );
        let col = rows(2, &[&[0, 1]]);
        assert_eq!(
            has_bicolored_path(&col, 2),
            Err(PathError::OrderTooSmall(2))
        );
    }

    #[test]
    fn longest_examples() {
        let col = rows(3, &[&[0, 1, 2, 0]]);
        let rep = longest_bicolored_path(&col, 1_000).unwrap();
        assert_eq!(
            rep.per_pair.iter().map(|p| p.order).collect::<Vec<_>>(),
            vec![2, 2, 2]
        );

        let cb = rows(2, &[&[0, 1], &[1, 0]]);
        assert_eq!(
            longest_bicolored_path(&cb, 1_000).unwrap().per_pair[0].order,
            4
        );

        let single = rows(1, &[&[0]]);
        let rep = longest_bicolored_path(&single, 10).unwrap();
        assert_eq!(rep.overall, 1);

        let ring = rows(3, &[&[0, 1, 0], &[1, 2, 1], &[0, 1, 0]]);
        assert!(matches!(
            longest_bicolored_path(&ring, 3),
            Err(PathError::BudgetExceeded { budget: 3 })
        ));
        let rep = longest_bicolored_path(&ring, 100_000).unwrap();
        assert_eq!(rep.per_pair[0].order, 8);
        assert_eq!(rep.per_pair[1].order, 1);
        assert_eq!(rep.per_pair[2].order, 3);
    }

    #[test]
    fn incremental_examples() {
        let g = GridGraph::new(1, 5).unwrap();
        let mut cs = vec![None; 5];
        cs[0] = Some(0);
        assert!(incremental_check(g, &cs, Vertex::new(0, 0), 5));
        cs = vec![Some(0), Some(1), Some(0), Some(1), Some(0)];
        assert!(!incremental_check(g, &cs, Vertex::new(0, 4), 5));
        cs = vec![Some(0), Some(1), Some(0), Some(1), Some(2)];
        assert!(incremental_check(g, &cs, Vertex::new(0, 4), 3));
        // v in the middle of the path
        cs = vec![Some(0), Some(1), Some(0), Some(1), Some(0)];
        assert!(!incremental_check(g, &cs, Vertex::new(0, 2), 5));
    }
}
