//! Exact search for the least number of colors in a P_k-coloring of a grid.
//!
//! Vertices are colored in row-major order, colors tried in ascending
//! order. After each assignment the search rejects a monochromatic edge to
//! the already-colored up/left neighbors and any bicolored path of order `k`
//! through the new vertex. Two symmetry rules cut the tree: color classes
//! are opened in order, and after each completed row the prefix must not be
//! beaten lexicographically by its left-right mirror image.

use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::coloring::{Color, Coloring};
use crate::grid::{GridError, GridGraph, Symmetry};
use crate::paths::{has_bicolored_path, ThroughVertex, UNCOLORED};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("path order k must be at least 3, got {0}")]
    OrderTooSmall(usize),
    #[error("at least one color is needed")]
    NoColors,
    #[error("at most {max} colors are supported, got {got}")]
    TooManyColors { got: usize, max: usize },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Limits {
    pub node_cap: Option<u64>,
    pub time_cap: Option<Duration>,
}

impl Limits {
    pub fn none() -> Self {
        Limits::default()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SymmetryOptions {
    /// Color `j` may be used only after color `j - 1` has been.
    pub canonical_colors: bool,
    /// Prune row prefixes beaten by their left-right mirror image.
    pub mirror: bool,
}

impl Default for SymmetryOptions {
    fn default() -> Self {
        SymmetryOptions {
            canonical_colors: true,
            mirror: true,
        }
    }
}

impl SymmetryOptions {
    pub fn off() -> Self {
        SymmetryOptions {
            canonical_colors: false,
            mirror: false,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Color assignments tried.
    pub nodes: u64,
    /// Assignments rejected by a monochromatic edge.
    pub proper_prunes: u64,
    /// Assignments rejected by a bicolored path.
    pub path_prunes: u64,
    /// Row prefixes rejected by the mirror rule.
    pub mirror_prunes: u64,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Found {
        coloring: Coloring,
    },
    /// The whole symmetry-reduced space was searched.
    Exhausted,
    Timeout,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Feasibility {
    pub rows: usize,
    pub cols: usize,
    /// `None` disables the path rule, leaving plain proper coloring.
    pub k: Option<usize>,
    pub colors: Color,
    pub outcome: Outcome,
    pub stats: SearchStats,
}

impl Feasibility {
    pub fn witness(&self) -> Option<&Coloring> {
        match &self.outcome {
            Outcome::Found { coloring } => Some(coloring),
            _ => None,
        }
    }

    pub fn is_exhausted(&self) -> bool {
        self.outcome == Outcome::Exhausted
    }
}

fn validate(rows: usize, cols: usize, k: Option<usize>, c: usize) -> Result<GridGraph, SolveError> {
    let grid = GridGraph::new(rows, cols)?;
    if let Some(k) = k.filter(|&k| k < 3) {
        return Err(SolveError::OrderTooSmall(k));
    }
    if c == 0 {
        return Err(SolveError::NoColors);
    }
    if c >= UNCOLORED as usize {
        return Err(SolveError::TooManyColors {
            got: c,
            max: UNCOLORED as usize - 1,
        });
    }
    Ok(grid)
}

/// Is there a proper `c`-coloring of the `rows x cols` grid with no
/// bicolored path on `k` vertices?
pub fn feasible(
    rows: usize,
    cols: usize,
    k: usize,
    c: usize,
    limits: &Limits,
) -> Result<Feasibility, SolveError> {
    feasible_with(rows, cols, Some(k), c, limits, SymmetryOptions::default())
}

/// [`feasible`] with the path rule optional and symmetry rules selectable.
pub fn feasible_with(
    rows: usize,
    cols: usize,
    k: Option<usize>,
    c: usize,
    limits: &Limits,
    sym: SymmetryOptions,
) -> Result<Feasibility, SolveError> {
    let grid = validate(rows, cols, k, c)?;
    let mut search = Search {
        grid,
        k,
        palette: c as Color,
        sym,
        colors: vec![UNCOLORED; grid.vertex_count()],
        through: ThroughVertex::new(grid),
        stats: SearchStats::default(),
        limits: *limits,
        started: Instant::now(),
        timed_out: false,
        scratch: Vec::with_capacity(grid.vertex_count()),
    };
    let found = search.dfs(0, 0);
    search.stats.elapsed_ms = search.started.elapsed().as_millis() as u64;
    let outcome = if found {
        let coloring = Coloring::new(grid, c as Color, search.colors.clone())
            .expect("search colors are in range");
        Outcome::Found { coloring }
    } else if search.timed_out {
        Outcome::Timeout
    } else {
        Outcome::Exhausted
    };
    Ok(Feasibility {
        rows,
        cols,
        k,
        colors: c as Color,
        outcome,
        stats: search.stats,
    })
}

struct Search {
    grid: GridGraph,
    k: Option<usize>,
    palette: Color,
    sym: SymmetryOptions,
    colors: Vec<Color>,
    through: ThroughVertex,
    stats: SearchStats,
    limits: Limits,
    started: Instant,
    timed_out: bool,
    scratch: Vec<Color>,
}

impl Search {
    fn out_of_budget(&mut self) -> bool {
        if self.timed_out {
            return true;
        }
        if self
            .limits
            .node_cap
            .is_some_and(|cap| self.stats.nodes >= cap)
        {
            self.timed_out = true;
        }
        if self.stats.nodes % 1024 == 0
            && self
                .limits
                .time_cap
                .is_some_and(|cap| self.started.elapsed() >= cap)
        {
            self.timed_out = true;
        }
        self.timed_out
    }

    /// `used` is the number of distinct colors in the prefix; with
    /// canonical colors those are exactly `0..used`.
    fn dfs(&mut self, i: usize, used: Color) -> bool {
        let n = self.grid.vertex_count();
        if i == n {
            return true;
        }
        let cols = self.grid.cols;
        let top = if self.sym.canonical_colors {
            (used + 1).min(self.palette)
        } else {
            self.palette
        };
        for color in 0..top {
            if self.out_of_budget() {
                return false;
            }
            self.stats.nodes += 1;
            let up = (i >= cols).then(|| self.colors[i - cols]);
            let left = (i % cols > 0).then(|| self.colors[i - 1]);
            if up == Some(color) || left == Some(color) {
                self.stats.proper_prunes += 1;
                continue;
            }
            self.colors[i] = color;
            if let Some(k) = self.k {
                if self.through.reaches(self.grid, &self.colors, i, k) {
                    self.stats.path_prunes += 1;
                    self.colors[i] = UNCOLORED;
                    continue;
                }
            }
            if self.sym.mirror && i % cols == cols - 1 && !self.mirror_ok(i + 1) {
                self.stats.mirror_prunes += 1;
                self.colors[i] = UNCOLORED;
                continue;
            }
            let next_used = if color >= used { color + 1 } else { used };
            if self.dfs(i + 1, next_used) {
                return true;
            }
            self.colors[i] = UNCOLORED;
            if self.timed_out {
                return false;
            }
        }
        false
    }

    /// The first `len` entries (whole rows) must not exceed their mirror
    /// image, relabeled to first-use order when colors are canonical.
    fn mirror_ok(&mut self, len: usize) -> bool {
        let cols = self.grid.cols;
        let mut relabel = [UNCOLORED; 256];
        let mut next = 0;
        self.scratch.clear();
        for start in (0..len).step_by(cols) {
            for j in (0..cols).rev() {
                let c = self.colors[start + j];
                let c = if self.sym.canonical_colors {
                    if relabel[c as usize] == UNCOLORED {
                        relabel[c as usize] = next;
                        next += 1;
                    }
                    relabel[c as usize]
                } else {
                    c
                };
                self.scratch.push(c);
            }
        }
        self.colors[..len] <= self.scratch[..]
    }
}

/// Why no coloring with fewer colors exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// The search for `colors` colors covered its whole reduced space.
    Exhausted { colors: Color, nodes: u64 },
    /// Fewer colors than the chromatic lower bound: the grid has an edge.
    ChromaticBound { colors: Color },
    /// The value is 1, nothing to refute.
    Trivial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Proven,
    Timeout,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveReport {
    pub rows: usize,
    pub cols: usize,
    /// `None` for the chromatic number.
    pub k: Option<usize>,
    /// Present only when `status` is `Proven`.
    pub value: Option<Color>,
    pub witness: Option<Coloring>,
    pub certificate: Option<Certificate>,
    /// One entry per color count searched, in order.
    pub attempts: Vec<Attempt>,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Attempt {
    pub colors: Color,
    /// `found`, `exhausted`, `timeout` or `pattern`.
    pub result: &'static str,
    pub stats: SearchStats,
}

impl SolveReport {
    pub fn total_nodes(&self) -> u64 {
        self.attempts.iter().map(|a| a.stats.nodes).sum()
    }
}

/// Least `c` admitting a P_k-coloring of the `rows x cols` grid.
///
/// `max_colors` stops the ascent early; the report then has status
/// `Timeout` if nothing was found.
pub fn solve_sk(
    rows: usize,
    cols: usize,
    k: usize,
    max_colors: Option<usize>,
    limits: &Limits,
) -> Result<SolveReport, SolveError> {
    solve_general(
        rows,
        cols,
        Some(k),
        max_colors,
        limits,
        SymmetryOptions::default(),
    )
}

/// Chromatic number through the same engine, path rule disabled.
pub fn chromatic_number(
    rows: usize,
    cols: usize,
    limits: &Limits,
) -> Result<SolveReport, SolveError> {
    solve_general(rows, cols, None, None, limits, SymmetryOptions::default())
}

pub fn solve_general(
    rows: usize,
    cols: usize,
    k: Option<usize>,
    max_colors: Option<usize>,
    limits: &Limits,
    sym: SymmetryOptions,
) -> Result<SolveReport, SolveError> {
    let grid = validate(rows, cols, k, 1)?;
    let lower = if grid.vertex_count() == 1 { 1 } else { 2 };
    let upper = max_colors.unwrap_or(grid.vertex_count()).max(1);
    let pattern = k.and_then(|k| pattern_upper_bound(rows, cols, k));
    let mut attempts = Vec::new();
    let mut certificate = match lower {
        1 => Some(Certificate::Trivial),
        _ => Some(Certificate::ChromaticBound { colors: 1 }),
    };
    for c in lower..=upper {
        if let Some(p) = pattern.as_ref().filter(|_| c == 3) {
            attempts.push(Attempt {
                colors: 3,
                result: "pattern",
                stats: SearchStats::default(),
            });
            return Ok(SolveReport {
                rows,
                cols,
                k,
                value: Some(3),
                witness: Some(p.clone()),
                certificate,
                attempts,
                status: Status::Proven,
            });
        }
        let f = feasible_with(rows, cols, k, c, limits, sym)?;
        let result = match &f.outcome {
            Outcome::Found { .. } => "found",
            Outcome::Exhausted => "exhausted",
            Outcome::Timeout => "timeout",
        };
        attempts.push(Attempt {
            colors: c as Color,
            result,
            stats: f.stats,
        });
        match f.outcome {
            Outcome::Found { coloring } => {
                return Ok(SolveReport {
                    rows,
                    cols,
                    k,
                    value: Some(c as Color),
                    witness: Some(coloring),
                    certificate,
                    attempts,
                    status: Status::Proven,
                })
            }
            Outcome::Exhausted => {
                certificate = Some(Certificate::Exhausted {
                    colors: c as Color,
                    nodes: f.stats.nodes,
                });
            }
            Outcome::Timeout => break,
        }
    }
    Ok(SolveReport {
        rows,
        cols,
        k,
        value: None,
        witness: None,
        certificate: None,
        attempts,
        status: Status::Timeout,
    })
}

/// The pattern in either orientation, kept only if it verifies.
fn pattern_upper_bound(rows: usize, cols: usize, k: usize) -> Option<Coloring> {
    let col = pattern_coloring(rows, cols, k)
        .or_else(|| pattern_coloring(cols, rows, k).map(|p| p.transformed(Symmetry::Transpose)))?;
    let clean = col.is_proper() && has_bicolored_path(&col, k).ok()?.is_none();
    clean.then_some(col)
}

/// The periodic 3-coloring whose column `j` alternates colors `j mod 3` and
/// `(j + 1) mod 3`, starting with `j mod 3` on row 0. Defined for
/// `rows <= k - 3`, where no bicolored path can reach `k` vertices.
pub fn pattern_coloring(rows: usize, cols: usize, k: usize) -> Option<Coloring> {
    if rows == 0 || cols == 0 || rows + 3 > k {
        return None;
    }
    let grid: Vec<Vec<Color>> = (0..rows)
        .map(|r| (0..cols).map(|j| ((j + r % 2) % 3) as Color).collect())
        .collect();
    Some(Coloring::from_rows(3, &grid).expect("pattern is well formed"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InequalityChain {
    pub chi: SolveReport,
    pub s_k: SolveReport,
    pub s_4: SolveReport,
    pub s_3: SolveReport,
}

impl InequalityChain {
    /// `(chi, s_k, s_4, s_3)`, when all four are proven.
    pub fn values(&self) -> Option<(Color, Color, Color, Color)> {
        Some((
            self.chi.value?,
            self.s_k.value?,
            self.s_4.value?,
            self.s_3.value?,
        ))
    }

    pub fn is_nondecreasing(&self) -> Option<bool> {
        let (a, b, c, d) = self.values()?;
        Some(a <= b && b <= c && c <= d)
    }
}

pub fn inequality_chain(
    rows: usize,
    cols: usize,
    k: usize,
    limits: &Limits,
) -> Result<InequalityChain, SolveError> {
    Ok(InequalityChain {
        chi: chromatic_number(rows, cols, limits)?,
        s_k: solve_sk(rows, cols, k, None, limits)?,
        s_4: solve_sk(rows, cols, 4, None, limits)?,
        s_3: solve_sk(rows, cols, 3, None, limits)?,
    })
}
