//! CNF export of the P_k-coloring question and decoding of solver models.
//!
//! Variable `(v, color)` is true when vertex `v` takes `color`; with `c`
//! colors its DIMACS id is `index(v) * c + color + 1`.

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::coloring::{Color, Coloring};
use crate::components::ColorPair;
use crate::grid::{GridError, GridGraph, Vertex};
use crate::paths::{has_bicolored_path, PathWitness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SatError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("path order k must be at least 3, got {0}")]
    OrderTooSmall(usize),
    #[error("color count must be between 1 and 254, got {0}")]
    BadColors(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("no `c pkgrid` parameter line found")]
    MissingParams,
    #[error("variable {0} is not assigned by the model")]
    Unassigned(usize),
    #[error("literal {0} is out of range")]
    UnknownVariable(i64),
    #[error("vertex {vertex} has {} true colors: {colors:?}", colors.len())]
    NotOneHot { vertex: Vertex, colors: Vec<Color> },
    #[error("decoded coloring has monochromatic edge {0}-{1}")]
    Improper(Vertex, Vertex),
    #[error("decoded coloring has a bicolored path of order {}", .0.order())]
    BicoloredPath(PathWitness),
}

/// Every simple path on exactly `k` vertices, once each, listed with its
/// smaller endpoint first. Paths are ordered by start vertex, then by the
/// depth-first order of ascending neighbor indices.
pub fn enumerate_paths(grid: GridGraph, k: usize) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    let mut visited = vec![false; grid.vertex_count()];
    let mut path = Vec::with_capacity(k);
    for s in 0..grid.vertex_count() {
        visited[s] = true;
        path.push(s);
        extend(grid, k, &mut visited, &mut path, &mut out);
        path.pop();
        visited[s] = false;
    }
    out
}

fn extend(
    grid: GridGraph,
    k: usize,
    visited: &mut [bool],
    path: &mut Vec<usize>,
    out: &mut Vec<Vec<Vertex>>,
) {
    if path.len() == k {
        // a single vertex is its own reverse
        if k == 1 || path[0] < path[k - 1] {
            out.push(path.iter().map(|&i| grid.vertex(i)).collect());
        }
        return;
    }
    let cur = *path.last().unwrap();
    for nb in grid.neighbor_indices(cur) {
        if !visited[nb] {
            visited[nb] = true;
            path.push(nb);
            extend(grid, k, visited, path, out);
            path.pop();
            visited[nb] = false;
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ClauseCounts {
    pub at_least_one: usize,
    pub at_most_one: usize,
    pub proper: usize,
    pub path: usize,
}

impl ClauseCounts {
    pub fn total(&self) -> usize {
        self.at_least_one + self.at_most_one + self.proper + self.path
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CnfInstance {
    pub rows: usize,
    pub cols: usize,
    pub k: usize,
    pub colors: Color,
    pub num_vars: usize,
    pub clauses: Vec<Vec<i64>>,
    pub counts: ClauseCounts,
    pub paths: Vec<Vec<Vertex>>,
}

impl CnfInstance {
    pub fn grid(&self) -> GridGraph {
        GridGraph {
            rows: self.rows,
            cols: self.cols,
        }
    }

    pub fn var(&self, v: Vertex, color: Color) -> usize {
        self.grid().index(v) * self.colors as usize + color as usize + 1
    }

    /// Inverse of [`CnfInstance::var`].
    pub fn var_meaning(&self, id: usize) -> Option<(Vertex, Color)> {
        if id == 0 || id > self.num_vars {
            return None;
        }
        let c = self.colors as usize;
        Some((self.grid().vertex((id - 1) / c), ((id - 1) % c) as Color))
    }

    /// DIMACS text: parameter and variable-map comments, header, clauses.
    pub fn to_dimacs(&self) -> String {
        let mut s = String::new();
        writeln!(
            s,
            "c pkgrid rows {} cols {} k {} colors {}",
            self.rows, self.cols, self.k, self.colors
        )
        .unwrap();
        for id in 1..=self.num_vars {
            let (v, color) = self.var_meaning(id).unwrap();
            writeln!(s, "c var {id} = v({},{}) color {color}", v.row, v.col).unwrap();
        }
        writeln!(s, "p cnf {} {}", self.num_vars, self.clauses.len()).unwrap();
        for clause in &self.clauses {
            for lit in clause {
                write!(s, "{lit} ").unwrap();
            }
            s.push_str("0\n");
        }
        s
    }
}

/// One-hot CNF that is satisfiable exactly when a proper `c`-coloring of
/// the grid without a bicolored `P_k` exists.
pub fn encode(rows: usize, cols: usize, k: usize, c: usize) -> Result<CnfInstance, SatError> {
    let grid = GridGraph::new(rows, cols)?;
    if k < 3 {
        return Err(SatError::OrderTooSmall(k));
    }
    if c == 0 || c >= Color::MAX as usize {
        return Err(SatError::BadColors(c));
    }
    let var = |v: Vertex, color: usize| (grid.index(v) * c + color + 1) as i64;
    let mut clauses = Vec::new();
    let mut counts = ClauseCounts::default();
    for v in grid.vertices() {
        clauses.push((0..c).map(|a| var(v, a)).collect());
        counts.at_least_one += 1;
    }
    for v in grid.vertices() {
        for a in 0..c {
            for b in a + 1..c {
                clauses.push(vec![-var(v, a), -var(v, b)]);
                counts.at_most_one += 1;
            }
        }
    }
    for (u, v) in grid.edges() {
        for a in 0..c {
            clauses.push(vec![-var(u, a), -var(v, a)]);
            counts.proper += 1;
        }
    }
    let paths = enumerate_paths(grid, k);
    for p in &paths {
        for pair in ColorPair::all(c as Color) {
            let clause = p
                .iter()
                .flat_map(|&v| {
                    (0..c)
                        .filter(|&x| !pair.contains(x as Color))
                        .map(move |x| var(v, x))
                })
                .collect();
            clauses.push(clause);
            counts.path += 1;
        }
    }
    Ok(CnfInstance {
        rows,
        cols,
        k,
        colors: c as Color,
        num_vars: grid.vertex_count() * c,
        clauses,
        counts,
        paths,
    })
}

/// Recover `(rows, cols, k, colors)` from the parameter comment written by
/// [`CnfInstance::to_dimacs`].
pub fn parse_params(dimacs: &str) -> Result<(usize, usize, usize, usize), SatError> {
    for (n, line) in dimacs.lines().enumerate() {
        let Some(rest) = line.strip_prefix("c pkgrid ") else {
            continue;
        };
        let t: Vec<&str> = rest.split_whitespace().collect();
        let bad = || SatError::Parse {
            line: n + 1,
            message: format!("malformed parameter line `{line}`"),
        };
        if t.len() != 8 || t[0] != "rows" || t[2] != "cols" || t[4] != "k" || t[6] != "colors" {
            return Err(bad());
        }
        let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
        return Ok((num(t[1])?, num(t[3])?, num(t[5])?, num(t[7])?));
    }
    Err(SatError::MissingParams)
}

/// Signed literals from solver output: `v` lines, or a bare literal list.
/// Comment (`c`) and status (`s`) lines are skipped; zeros are ignored.
pub fn parse_model(text: &str) -> Result<Vec<i64>, SatError> {
    let mut lits = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('s') {
            continue;
        }
        let body = line.strip_prefix('v').unwrap_or(line);
        for tok in body.split_whitespace() {
            let lit: i64 = tok.parse().map_err(|_| SatError::Parse {
                line: n + 1,
                message: format!("`{tok}` is not a literal"),
            })?;
            if lit != 0 {
                lits.push(lit);
            }
        }
    }
    Ok(lits)
}

/// Read the coloring off a model of `inst` and verify it.
pub fn decode(inst: &CnfInstance, model: &[i64]) -> Result<Coloring, SatError> {
    let mut value: Vec<Option<bool>> = vec![None; inst.num_vars + 1];
    for &lit in model {
        let id = lit.unsigned_abs() as usize;
        if id == 0 || id > inst.num_vars {
            return Err(SatError::UnknownVariable(lit));
        }
        value[id] = Some(lit > 0);
    }
    if let Some(id) = (1..=inst.num_vars).find(|&id| value[id].is_none()) {
        return Err(SatError::Unassigned(id));
    }
    let grid = inst.grid();
    let mut colors = Vec::with_capacity(grid.vertex_count());
    for v in grid.vertices() {
        let on: Vec<Color> = (0..inst.colors)
            .filter(|&a| value[inst.var(v, a)] == Some(true))
            .collect();
        if on.len() != 1 {
            return Err(SatError::NotOneHot {
                vertex: v,
                colors: on,
            });
        }
        colors.push(on[0]);
    }
    let col = Coloring::new(grid, inst.colors, colors).expect("colors in range");
    if let Some((u, v)) = col.monochromatic_edge() {
        return Err(SatError::Improper(u, v));
    }
    if let Some(w) = has_bicolored_path(&col, inst.k).expect("proper, k >= 3") {
        return Err(SatError::BicoloredPath(w));
    }
    Ok(col)
}
