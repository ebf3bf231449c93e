use std::collections::{HashSet, VecDeque};

use super::walk::dir_between;
use super::{BoundaryError, PartialWalk};
use crate::grid::{Dir, GridGraph, Vertex};

/// Number of unit cells on the walker's left along `pw`, bounded by the
/// walk itself and the grid sides.
///
/// Both ends of the walk must lie on the grid boundary so that the walk and
/// the sides close a curve.
pub fn rc_area(grid: GridGraph, pw: &PartialWalk) -> Result<usize, BoundaryError> {
    let vs = &pw.vertices;
    let Some((&first, &last)) = vs.first().zip(vs.last()) else {
        return Ok(0);
    };
    for v in [first, last] {
        if grid.sides_touched(v).is_empty() {
            return Err(BoundaryError::Open(v));
        }
    }
    let (ch, cw) = (grid.rows - 1, grid.cols - 1);
    if ch == 0 || cw == 0 {
        return Ok(0);
    }
    let mut walls = HashSet::new();
    let mut queue = VecDeque::new();
    let mut seen = vec![false; ch * cw];
    for w in vs.windows(2) {
        let (a, b) = (w[0], w[1]);
        let d = dir_between(a, b).ok_or(BoundaryError::Inconsistent(a, b))?;
        walls.insert(edge_key(grid, a, b));
        let (r, c) = (a.row as isize, a.col as isize);
        let cell = match d {
            Dir::East => (r - 1, c),
            Dir::West => (r, c - 1),
            Dir::South => (r, c),
            Dir::North => (r - 1, c - 1),
        };
        if cell.0 >= 0 && cell.1 >= 0 && (cell.0 as usize) < ch && (cell.1 as usize) < cw {
            let i = cell.0 as usize * cw + cell.1 as usize;
            if !seen[i] {
                seen[i] = true;
                queue.push_back(i);
            }
        }
    }
    let mut area = 0;
    while let Some(i) = queue.pop_front() {
        area += 1;
        let (r, c) = (i / cw, i % cw);
        // (neighbor cell, the grid edge shared with it)
        let mut next = Vec::with_capacity(4);
        if r > 0 {
            next.push((i - cw, Vertex::new(r, c), Vertex::new(r, c + 1)));
        }
        if r + 1 < ch {
            next.push((i + cw, Vertex::new(r + 1, c), Vertex::new(r + 1, c + 1)));
        }
        if c > 0 {
            next.push((i - 1, Vertex::new(r, c), Vertex::new(r + 1, c)));
        }
        if c + 1 < cw {
            next.push((i + 1, Vertex::new(r, c + 1), Vertex::new(r + 1, c + 1)));
        }
        for (j, a, b) in next {
            if !seen[j] && !walls.contains(&edge_key(grid, a, b)) {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    Ok(area)
}

fn edge_key(grid: GridGraph, a: Vertex, b: Vertex) -> (usize, usize) {
    let (x, y) = (grid.index(a), grid.index(b));
    (x.min(y), x.max(y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pw(cells: &[(usize, usize)]) -> PartialWalk {
        PartialWalk {
            vertices: cells.iter().map(|&(r, c)| Vertex::new(r, c)).collect(),
            start_position: 0,
        }
    }

    #[test]
    fn top_row_walk_keeps_everything_below() {
        let g = GridGraph::new(4, 4).unwrap();
        // the underside of the whole top row, walked right to left
        let w = pw(&[(0, 3), (0, 2), (0, 1), (0, 0)]);
        assert_eq!(rc_area(g, &w), Ok(9));
    }

    #[test]
    fn corner_square_cut_off() {
        let g = GridGraph::new(3, 3).unwrap();
        // around (1,1) from the top side to the left side
        let w = pw(&[(0, 1), (1, 1), (1, 0)]);
        assert_eq!(rc_area(g, &w), Ok(3));
        let back = pw(&[(1, 0), (1, 1), (0, 1)]);
        assert_eq!(rc_area(g, &back), Ok(1));
    }

    #[test]
    fn hanging_tree_encloses_nothing_extra() {
        let g = GridGraph::new(3, 3).unwrap();
        let w = pw(&[(0, 2), (1, 2), (0, 2), (0, 1), (1, 1), (0, 1), (0, 0)]);
        assert_eq!(rc_area(g, &w), Ok(4));
    }

    #[test]
    fn rejects_bad_walks() {
        let g = GridGraph::new(4, 4).unwrap();
        assert_eq!(
            rc_area(g, &pw(&[(1, 1), (1, 2), (0, 2)])),
            Err(BoundaryError::Open(Vertex::new(1, 1)))
        );
        assert_eq!(
            rc_area(g, &pw(&[(0, 0), (1, 1), (0, 2)])),
            Err(BoundaryError::Inconsistent(
                Vertex::new(0, 0),
                Vertex::new(1, 1)
            ))
        );
    }

    #[test]
    fn thin_grids_have_no_cells() {
        let g = GridGraph::new(1, 5).unwrap();
        assert_eq!(rc_area(g, &pw(&[(0, 4), (0, 3)])), Ok(0));
    }
}
