//! Slow, obviously-correct reference implementations used by the
//! integration tests. None of them call the library's search code.

#![allow(dead_code)]

use pkgrid::{Color, Coloring};

/// Row-major neighbors computed from coordinates.
pub fn nbrs(rows: usize, cols: usize, i: usize) -> Vec<usize> {
    let (r, c) = (i / cols, i % cols);
    let mut out = Vec::new();
    for (dr, dc) in [(-1isize, 0isize), (1, 0), (0, -1), (0, 1)] {
        let (nr, nc) = (r as isize + dr, c as isize + dc);
        if nr >= 0 && nc >= 0 && (nr as usize) < rows && (nc as usize) < cols {
            out.push(nr as usize * cols + nc as usize);
        }
    }
    out
}

pub fn proper(rows: usize, cols: usize, colors: &[Color]) -> bool {
    (0..rows * cols).all(|i| nbrs(rows, cols, i).iter().all(|&j| colors[i] != colors[j]))
}

/// Longest simple path (vertex count) whose vertices use at most two
/// colors, stopping early once `cap` is reached.
pub fn longest_two_color_path(rows: usize, cols: usize, colors: &[Color], cap: usize) -> usize {
    fn go(
        rows: usize,
        cols: usize,
        colors: &[Color],
        cur: usize,
        used: &mut Vec<bool>,
        palette: &mut Vec<Color>,
        len: usize,
        cap: usize,
    ) -> usize {
        let mut best = len;
        if best >= cap {
            return best;
        }
        for j in nbrs(rows, cols, cur) {
            if used[j] {
                continue;
            }
            let fresh = !palette.contains(&colors[j]);
            if fresh && palette.len() == 2 {
                continue;
            }
            if fresh {
                palette.push(colors[j]);
            }
            used[j] = true;
            best = best.max(go(rows, cols, colors, j, used, palette, len + 1, cap));
            used[j] = false;
            if fresh {
                palette.pop();
            }
            if best >= cap {
                break;
            }
        }
        best
    }
    let n = rows * cols;
    let mut best = 0;
    for s in 0..n {
        let mut used = vec![false; n];
        used[s] = true;
        let mut palette = vec![colors[s]];
        best = best.max(go(rows, cols, colors, s, &mut used, &mut palette, 1, cap));
        if best >= cap {
            break;
        }
    }
    best
}

pub fn naive_has_path(col: &Coloring, k: usize) -> bool {
    let g = col.grid();
    longest_two_color_path(g.rows, g.cols, col.colors(), k) >= k
}

/// Every assignment of `c` colors to `n` vertices, as an odometer.
pub fn for_each_assignment(n: usize, c: Color, mut f: impl FnMut(&[Color]) -> bool) {
    let mut a = vec![0 as Color; n];
    loop {
        if f(&a) {
            return;
        }
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            a[i] += 1;
            if a[i] < c {
                break;
            }
            a[i] = 0;
            i += 1;
        }
    }
}

/// Does some proper `c`-coloring avoid a two-colored path on `k` vertices?
/// `k = None` asks only for properness.
pub fn brute_feasible(rows: usize, cols: usize, k: Option<usize>, c: Color) -> bool {
    let mut found = false;
    for_each_assignment(rows * cols, c, |a| {
        found =
            proper(rows, cols, a) && k.is_none_or(|k| longest_two_color_path(rows, cols, a, k) < k);
        found
    });
    found
}

pub fn brute_value(rows: usize, cols: usize, k: Option<usize>) -> Color {
    (1..).find(|&c| brute_feasible(rows, cols, k, c)).unwrap()
}

/// Every proper 3-coloring, by filtering all assignments.
pub fn all_proper(rows: usize, cols: usize, c: Color) -> Vec<Coloring> {
    let mut out = Vec::new();
    let grid = pkgrid::GridGraph::new(rows, cols).unwrap();
    for_each_assignment(rows * cols, c, |a| {
        if proper(rows, cols, a) {
            out.push(Coloring::new(grid, c, a.to_vec()).unwrap());
        }
        false
    });
    out
}

/// Number of undirected simple paths on exactly `k` vertices, counting
/// directed ones and halving.
pub fn count_paths(rows: usize, cols: usize, k: usize) -> usize {
    fn go(rows: usize, cols: usize, cur: usize, used: &mut Vec<bool>, left: usize) -> usize {
        if left == 0 {
            return 1;
        }
        let mut total = 0;
        for j in nbrs(rows, cols, cur) {
            if !used[j] {
                used[j] = true;
                total += go(rows, cols, j, used, left - 1);
                used[j] = false;
            }
        }
        total
    }
    let n = rows * cols;
    let directed: usize = (0..n)
        .map(|s| {
            let mut used = vec![false; n];
            used[s] = true;
            go(rows, cols, s, &mut used, k - 1)
        })
        .sum();
    if k == 1 {
        directed
    } else {
        directed / 2
    }
}

/// Evaluate a clause list under `assign[var]` (index 0 unused).
pub fn cnf_holds(clauses: &[Vec<i64>], assign: &[bool]) -> bool {
    clauses.iter().all(|cl| {
        cl.iter()
            .any(|&l| assign[l.unsigned_abs() as usize] == (l > 0))
    })
}

/// Brute-force satisfiability; only for tiny variable counts.
pub fn brute_sat(num_vars: usize, clauses: &[Vec<i64>]) -> Option<Vec<i64>> {
    assert!(num_vars <= 22, "too many variables for brute force");
    for mask in 0u64..(1 << num_vars) {
        let assign: Vec<bool> = (0..=num_vars)
            .map(|v| v > 0 && mask >> (v - 1) & 1 == 1)
            .collect();
        if cnf_holds(clauses, &assign) {
            return Some(
                (1..=num_vars as i64)
                    .map(|v| if assign[v as usize] { v } else { -v })
                    .collect(),
            );
        }
    }
    None
}

/// Run the DIMACS text through an external solver; the model as signed
/// literals when satisfiable.
pub fn external_sat(dimacs: &str) -> Option<Vec<i64>> {
    let mut solver = varisat::Solver::new();
    solver
        .add_dimacs_cnf(dimacs.as_bytes())
        .expect("solver accepts the DIMACS text");
    if !solver.solve().expect("solver runs") {
        return None;
    }
    Some(
        solver
            .model()
            .unwrap()
            .into_iter()
            .map(|l| l.to_dimacs() as i64)
            .collect(),
    )
}

/// All grid shapes with at most `max` vertices.
pub fn shapes(max: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for m in 1..=max {
        for n in 1..=max / m {
            out.push((m, n));
        }
    }
    out
}
