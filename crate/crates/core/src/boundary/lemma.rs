use std::collections::VecDeque;

use serde::Serialize;

use super::walk::{angle_sequence, PartialWalk};
use super::BoundaryError;
use crate::coloring::{Color, Coloring};
use crate::components::{component_containing, BicoloredComponent, ColorPair};
use crate::grid::{GridGraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClauseResult {
    pub clause: usize,
    pub holds: bool,
    /// Where the clause breaks, when it does.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl ClauseResult {
    fn pass(clause: usize) -> Self {
        ClauseResult {
            clause,
            holds: true,
            detail: None,
        }
    }

    fn fail(clause: usize, detail: impl Into<String>) -> Self {
        ClauseResult {
            clause,
            holds: false,
            detail: Some(detail.into()),
        }
    }
}

/// Outcome of the five structural clauses on one partial walk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub r: usize,
    pub angles: Vec<u16>,
    pub clauses: Vec<ClauseResult>,
}

impl LemmaReport {
    pub fn all_hold(&self) -> bool {
        self.clauses.iter().all(|c| c.holds)
    }

    /// `clause` is 1-based.
    pub fn holds(&self, clause: usize) -> bool {
        self.clauses[clause - 1].holds
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClauseResult> {
        self.clauses.iter().filter(|c| !c.holds)
    }
}

fn preconditions(col: &Coloring, comp: &BicoloredComponent) -> Result<(), BoundaryError> {
    if col.palette() != 3 {
        return Err(BoundaryError::NotThreeColors(col.palette()));
    }
    if let Some((u, v)) = col.monochromatic_edge() {
        return Err(BoundaryError::Improper(u, v));
    }
    if !comp.truly_bicolored {
        return Err(BoundaryError::NotBicolored);
    }
    if !comp.class().touches_side() {
        return Err(BoundaryError::Interior);
    }
    if comp.len() == 2 {
        return Err(BoundaryError::SingleEdge);
    }
    Ok(())
}

/// For each odd `i <= r - 2` (1-based), the fourth corner of the unit
/// square through `v_i, v_{i+1}, v_{i+2}`.
fn fourth_corners(grid: GridGraph, pw: &PartialWalk) -> Result<Vec<(usize, Vertex)>, String> {
    let v = &pw.vertices;
    let mut out = Vec::new();
    let mut i = 1;
    while i + 2 <= v.len() {
        let (a, b, c) = (v[i - 1], v[i], v[i + 1]);
        let straight_or_back = a == c || a.row == c.row || a.col == c.col;
        if straight_or_back {
            return Err(format!(
                "v_{i}, v_{}, v_{} = {a}, {b}, {c} lie on no 4-cycle",
                i + 1,
                i + 2
            ));
        }
        let row = (a.row + c.row) as isize - b.row as isize;
        let col = (a.col + c.col) as isize - b.col as isize;
        let u = Vertex::new(row as usize, col as usize);
        if row < 0 || col < 0 || !grid.contains(u) {
            return Err(format!(
                "fourth corner of square at v_{} is off the grid",
                i + 1
            ));
        }
        out.push((i, u));
        i += 2;
    }
    Ok(out)
}

fn third_color(pair: ColorPair) -> Color {
    3 - pair.lo - pair.hi
}

fn connected(vertices: &[Vertex]) -> bool {
    let Some(&first) = vertices.first() else {
        return true;
    };
    let mut seen = vec![false; vertices.len()];
    seen[0] = true;
    let mut queue = VecDeque::from([first]);
    while let Some(x) = queue.pop_front() {
        for (j, &y) in vertices.iter().enumerate() {
            if !seen[j] && x.row.abs_diff(y.row) + x.col.abs_diff(y.col) == 1 {
                seen[j] = true;
                queue.push_back(y);
            }
        }
    }
    seen.into_iter().all(|b| b)
}

/// The odd-indexed walk vertices together with the fourth corners.
fn neighbor_subgraph(pw: &PartialWalk, corners: &[(usize, Vertex)]) -> Vec<Vertex> {
    let mut s: Vec<Vertex> = pw.vertices.iter().step_by(2).copied().collect();
    s.extend(corners.iter().map(|&(_, u)| u));
    s.sort_unstable();
    s.dedup();
    s
}

fn clause5(col: &Coloring, comp: &BicoloredComponent, pw: &PartialWalk) -> ClauseResult {
    if pw.r() < 3 {
        return ClauseResult::fail(5, "undefined for r < 3");
    }
    let c1 = col.color(pw.first());
    let c3 = third_color(comp.pair);
    let corners = match fourth_corners(col.grid(), pw) {
        Ok(c) => c,
        Err(e) => return ClauseResult::fail(5, e),
    };
    for &(i, u) in &corners {
        if col.color(u) != c3 {
            return ClauseResult::fail(
                5,
                format!(
                    "u_{} = {u} has color {}, expected {c3}",
                    (i + 1) / 2,
                    col.color(u)
                ),
            );
        }
    }
    let s = neighbor_subgraph(pw, &corners);
    if let Some(&bad) = s
        .iter()
        .find(|&&x| col.color(x) != c1 && col.color(x) != c3)
    {
        return ClauseResult::fail(5, format!("{bad} is not colored {c1} or {c3}"));
    }
    if !connected(&s) {
        return ClauseResult::fail(5, "odd walk vertices and fourth corners are disconnected");
    }
    ClauseResult::pass(5)
}

/// Evaluate the five boundary clauses for one partial walk of a
/// side-touching bicolored component in a proper 3-coloring:
///
/// 1. `r >= 3`;
/// 2. the angles at `v_2` and `v_{r-1}` are 90;
/// 3. the angle at `v_{i+1}` is 90 exactly when `i` is odd;
/// 4. `r` is odd;
/// 5. the odd-indexed walk vertices and the third-colored fourth corners
///    of their squares form a connected `{c1, c3}`-colored subgraph.
///
/// `col`, `comp` and `pw` must share one frame (normally the normalized
/// one).
pub fn check_walk_clauses(
    col: &Coloring,
    comp: &BicoloredComponent,
    pw: &PartialWalk,
) -> Result<LemmaReport, BoundaryError> {
    preconditions(col, comp)?;
    let r = pw.r();
    let angles = angle_sequence(pw).unwrap_or_default();
    let mut clauses = Vec::with_capacity(5);

    clauses.push(if r >= 3 {
        ClauseResult::pass(1)
    } else {
        ClauseResult::fail(1, format!("r = {r}"))
    });

    clauses.push(match (angles.first(), angles.last()) {
        (Some(90), Some(90)) => ClauseResult::pass(2),
        (Some(&a), Some(&b)) => ClauseResult::fail(2, format!("end angles {a} and {b}")),
        _ => ClauseResult::fail(2, "no angles"),
    });

    let bad = angles
        .iter()
        .enumerate()
        .map(|(j, &a)| (j + 1, a))
        .find(|&(i, a)| (a == 90) != (i % 2 == 1));
    clauses.push(match (r >= 3, bad) {
        (false, _) => ClauseResult::fail(3, "no angles"),
        (true, None) => ClauseResult::pass(3),
        (true, Some((i, a))) => ClauseResult::fail(
            3,
            format!("angle {a} at v_{} = {} with i = {i}", i + 1, pw.vertices[i]),
        ),
    });

    clauses.push(if r % 2 == 1 {
        ClauseResult::pass(4)
    } else {
        ClauseResult::fail(4, format!("r = {r} is even"))
    });

    clauses.push(clause5(col, comp, pw));

    Ok(LemmaReport { r, angles, clauses })
}

/// The neighbor structure built from a partial walk: the third-colored
/// fourth corners `u`, the squares they close, and the `{c1, c3}` component
/// containing them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DcConstruction {
    pub walk: PartialWalk,
    pub c1: Color,
    pub c3: Color,
    /// `u_1, u_2, ...` in walk order; repeats are possible.
    pub fourth_corners: Vec<Vertex>,
    /// `v_i` for odd `i`, plus the fourth corners, deduplicated.
    pub vertex_set: Vec<Vertex>,
    /// Top-left corner of each unit square in the collection.
    pub squares: Vec<Vertex>,
    pub component: BicoloredComponent,
}

/// Build the `{c1, c3}` structure next to `comp` along `pw`.
///
/// A fourth corner that is not third-colored cannot occur in a proper
/// 3-coloring, so that error doubles as a falsification report.
pub fn derive_dc(
    col: &Coloring,
    comp: &BicoloredComponent,
    pw: &PartialWalk,
) -> Result<DcConstruction, BoundaryError> {
    let report = check_walk_clauses(col, comp, pw)?;
    if let Some(f) = report.clauses[..4].iter().find(|c| !c.holds) {
        return Err(BoundaryError::ClauseFailed {
            clause: f.clause,
            detail: f.detail.clone().unwrap_or_default(),
        });
    }
    let c1 = col.color(pw.first());
    let c3 = third_color(comp.pair);
    let corners = fourth_corners(col.grid(), pw)
        .map_err(|detail| BoundaryError::ClauseFailed { clause: 5, detail })?;
    for (n, &(_, u)) in corners.iter().enumerate() {
        if col.color(u) != c3 {
            return Err(BoundaryError::NotThirdColor {
                index: n + 1,
                vertex: u,
                color: col.color(u),
                expected: c3,
            });
        }
    }
    let pair = ColorPair::new(c1, c3).expect("distinct colors");
    let component = component_containing(col, pair, pw.first()).expect("v_1 has color c1");
    let vertex_set = neighbor_subgraph(pw, &corners);
    if let Some(&stray) = vertex_set.iter().find(|&&x| !component.contains(x)) {
        return Err(BoundaryError::ClauseFailed {
            clause: 5,
            detail: format!("{stray} is outside the {{{c1},{c3}}} component of v_1"),
        });
    }
    let squares = corners
        .iter()
        .map(|&(i, u)| {
            let b = pw.vertices[i];
            Vertex::new(b.row.min(u.row), b.col.min(u.col))
        })
        .collect();
    Ok(DcConstruction {
        walk: pw.clone(),
        c1,
        c3,
        fourth_corners: corners.into_iter().map(|(_, u)| u).collect(),
        vertex_set,
        squares,
        component,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::{boundary_walk, normalized_view, partial_walks};
    use crate::components::bicolored_components;

    /// Walk `(s,a,b,a,d,e,t)` along the top-left corner, in a full proper
    /// 3-coloring of the 4x4 grid.
    fn type2_tree() -> Coloring {
        Coloring::from_rows(
            3,
            &[
                vec![0, 1, 0, 1],
                vec![1, 2, 1, 2],
                vec![2, 0, 2, 0],
                vec![0, 1, 0, 1],
            ],
        )
        .unwrap()
    }

    fn first_walk(
        col: &Coloring,
        v: Vertex,
        pair: ColorPair,
    ) -> (Coloring, BicoloredComponent, PartialWalk) {
        let comp = component_containing(col, pair, v).unwrap();
        let view = normalized_view(col, &comp);
        let w = boundary_walk(view.grid(), &view.component);
        let pw = partial_walks(view.grid(), &view.component, &w)
            .unwrap()
            .remove(0);
        (view.coloring, view.component, pw)
    }

    #[test]
    fn type2_tree_satisfies_all_clauses() {
        let col = type2_tree();
        assert!(col.is_proper());
        let (c, comp, pw) = first_walk(&col, Vertex::new(0, 0), ColorPair::new(0, 1).unwrap());
        assert_eq!(pw.r(), 7);
        assert_eq!(pw.first(), Vertex::new(0, 3));
        let rep = check_walk_clauses(&c, &comp, &pw).unwrap();
        assert!(rep.all_hold(), "{rep:?}");
        assert_eq!(rep.angles, vec![90, 360, 90, 180, 90]);

        let dc = derive_dc(&c, &comp, &pw).unwrap();
        // u_2 = u_3
        assert_eq!(
            dc.fourth_corners,
            vec![Vertex::new(1, 3), Vertex::new(1, 1), Vertex::new(1, 1)]
        );
        assert_eq!(
            dc.squares,
            vec![Vertex::new(0, 2), Vertex::new(0, 1), Vertex::new(0, 0)]
        );
        assert_eq!((dc.c1, dc.c3), (1, 2));
        for v in &dc.vertex_set {
            assert!(dc.component.contains(*v));
        }
    }

    #[test]
    fn smallest_case_has_one_square() {
        // corner component (0,1),(0,0),(1,0)
        let col = Coloring::from_rows(3, &[vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]).unwrap();
        let (c, comp, pw) = first_walk(&col, Vertex::new(0, 0), ColorPair::new(0, 1).unwrap());
        assert_eq!(pw.r(), 3);
        let dc = derive_dc(&c, &comp, &pw).unwrap();
        assert_eq!(dc.squares.len(), 1);
        assert_eq!(dc.fourth_corners, vec![Vertex::new(1, 1)]);
        for v in [pw.vertices[0], Vertex::new(1, 1), pw.vertices[2]] {
            assert!(dc.component.contains(v));
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let single_edge = Coloring::from_rows(3, &[vec![0, 1, 2]]).unwrap();
        let comp = bicolored_components(&single_edge, ColorPair::new(0, 1).unwrap()).remove(0);
        let pw = PartialWalk {
            vertices: comp.vertices.clone(),
            start_position: 0,
        };
        assert_eq!(
            check_walk_clauses(&single_edge, &comp, &pw),
            Err(BoundaryError::SingleEdge)
        );
        let four = Coloring::from_rows(4, &[vec![0, 1, 2, 3]]).unwrap();
        let comp = bicolored_components(&four, ColorPair::new(0, 1).unwrap()).remove(0);
        assert_eq!(
            check_walk_clauses(&four, &comp, &pw),
            Err(BoundaryError::NotThreeColors(4))
        );
    }
}
