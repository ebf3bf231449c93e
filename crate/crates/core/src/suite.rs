//! Invariant sweeps over corpora of proper 3-colorings.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::boundary::{
    boundary_walk, check_walk_clauses, derive_dc, iterate_dc, normalized_view, partial_walks,
    BoundaryError, IterationOutcome,
};
use crate::coloring::{Color, Coloring};
use crate::components::{bicolored_components, BicoloredComponent, ColorPair, ComponentClass};
use crate::grid::{GridError, GridGraph};
use crate::paths::has_bicolored_path;

/// Largest grid (in vertices) accepted for exhaustive sweeps.
pub const EXHAUSTIVE_MAX_VERTICES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("exhaustive mode is limited to {max} vertices, grid has {got}")]
    TooLarge { got: usize, max: usize },
}

/// Call `f` on every proper coloring of `grid` with colors `0..palette`,
/// in lexicographic row-major order.
pub fn for_each_proper(grid: GridGraph, palette: Color, mut f: impl FnMut(&Coloring)) {
    let n = grid.vertex_count();
    let mut colors = vec![0; n];
    fill(grid, palette, 0, &mut colors, &mut f);
}

fn fill(
    grid: GridGraph,
    palette: Color,
    i: usize,
    colors: &mut Vec<Color>,
    f: &mut impl FnMut(&Coloring),
) {
    if i == colors.len() {
        f(&Coloring::new(grid, palette, colors.clone()).expect("in range"));
        return;
    }
    let cols = grid.cols;
    for c in 0..palette {
        if (i >= cols && colors[i - cols] == c) || (i % cols > 0 && colors[i - 1] == c) {
            continue;
        }
        colors[i] = c;
        fill(grid, palette, i + 1, colors, f);
    }
}

pub fn proper_colorings(grid: GridGraph, palette: Color) -> Vec<Coloring> {
    let mut out = Vec::new();
    for_each_proper(grid, palette, |c| out.push(c.clone()));
    out
}

/// Proper 3-coloring drawn row-major: each vertex picks uniformly among the
/// colors its up and left neighbors do not use.
pub fn random_proper(grid: GridGraph, rng: &mut ChaCha8Rng) -> Coloring {
    let cols = grid.cols;
    let mut colors: Vec<Color> = Vec::with_capacity(grid.vertex_count());
    for i in 0..grid.vertex_count() {
        let up = (i >= cols).then(|| colors[i - cols]);
        let left = (i % cols > 0).then(|| colors[i - 1]);
        let allowed: Vec<Color> = (0..3)
            .filter(|&c| Some(c) != up && Some(c) != left)
            .collect();
        colors.push(*allowed.choose(rng).expect("three colors leave a choice"));
    }
    Coloring::new(grid, 3, colors).expect("in range")
}

pub fn random_corpus(grid: GridGraph, samples: usize, seed: u64) -> Vec<Coloring> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| random_proper(grid, &mut rng))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub invariant: &'static str,
    pub detail: String,
    /// The offending coloring in the text format.
    pub coloring: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub rows: usize,
    pub cols: usize,
    pub colorings: usize,
    /// Checks performed per invariant.
    pub checks: BTreeMap<&'static str, usize>,
    /// Violations found per invariant.
    pub violation_counts: BTreeMap<&'static str, usize>,
    /// The first violations, up to [`SuiteReport::KEEP`].
    pub violations: Vec<Violation>,
    /// Path order used for the peripheral-implies-path check, when it
    /// applies to the grid.
    pub peripheral_k: Option<usize>,
    pub max_iterations: usize,
    /// Partial components whose boundary splits into more than one partial
    /// walk (a Type 2 component missing the corner vertex gets a short walk
    /// across the corner). Every walk is still checked; this is reported,
    /// not counted as a violation.
    pub partial_with_extra_walks: usize,
    pub extra_walk_example: Option<String>,
}

impl SuiteReport {
    pub const KEEP: usize = 50;

    pub fn total_violations(&self) -> usize {
        self.violation_counts.values().sum()
    }

    pub fn is_clean(&self) -> bool {
        self.total_violations() == 0
    }

    pub fn checked(&self, invariant: &str) -> usize {
        self.checks.get(invariant).copied().unwrap_or(0)
    }

    pub fn violated(&self, invariant: &str) -> usize {
        self.violation_counts.get(invariant).copied().unwrap_or(0)
    }
}

pub const PARTITION: &str = "partition";
pub const NEIGHBOR_COLOR: &str = "neighbor_third_color";
pub const CLAUSE: [&str; 5] = ["clause_1", "clause_2", "clause_3", "clause_4", "clause_5"];
pub const ANGLE_COUNT: &str = "angle_count";
pub const SQUARES: &str = "squares_nonempty";
pub const PERIPHERAL_PATH: &str = "peripheral_implies_path";
pub const TERMINATION: &str = "iteration_terminates";
pub const AREA: &str = "area_decreases";

struct Runner {
    report: SuiteReport,
}

impl Runner {
    fn check(
        &mut self,
        invariant: &'static str,
        col: &Coloring,
        ok: bool,
        detail: impl FnOnce() -> String,
    ) {
        *self.report.checks.entry(invariant).or_default() += 1;
        if ok {
            return;
        }
        *self.report.violation_counts.entry(invariant).or_default() += 1;
        if self.report.violations.len() < SuiteReport::KEEP {
            self.report.violations.push(Violation {
                invariant,
                detail: detail(),
                coloring: col.to_text(),
            });
        }
    }

    fn coloring(&mut self, col: &Coloring) {
        self.report.colorings += 1;
        let grid = col.grid();
        let mut any_peripheral = false;
        for pair in ColorPair::all(3) {
            let comps = bicolored_components(col, pair);
            self.partition(col, pair, &comps);
            for comp in comps.iter().filter(|c| c.truly_bicolored) {
                self.neighbors(col, comp);
                match comp.class() {
                    ComponentClass::Interior => continue,
                    ComponentClass::Peripheral => any_peripheral = true,
                    _ => {}
                }
                self.walks(col, comp);
                self.iteration(col, comp, grid.vertex_count());
            }
        }
        if let Some(k) = self.report.peripheral_k {
            if any_peripheral {
                let found = has_bicolored_path(col, k).expect("proper").is_some();
                self.check(PERIPHERAL_PATH, col, found, || {
                    format!("peripheral component but no bicolored P_{k}")
                });
            }
        }
    }

    fn partition(&mut self, col: &Coloring, pair: ColorPair, comps: &[BicoloredComponent]) {
        let grid = col.grid();
        let mut owner = vec![usize::MAX; grid.vertex_count()];
        let mut ok = true;
        for (n, comp) in comps.iter().enumerate() {
            for &v in &comp.vertices {
                let i = grid.index(v);
                ok &= pair.contains(col.color(v)) && owner[i] == usize::MAX;
                owner[i] = n;
            }
        }
        for i in 0..grid.vertex_count() {
            let inside = pair.contains(col.color_at(i));
            ok &= inside == (owner[i] != usize::MAX);
            if inside {
                ok &= grid
                    .neighbor_indices(i)
                    .filter(|&j| pair.contains(col.color_at(j)))
                    .all(|j| owner[j] == owner[i]);
            }
        }
        self.check(PARTITION, col, ok, || {
            format!("components of {pair:?} are not a partition")
        });
    }

    fn neighbors(&mut self, col: &Coloring, comp: &BicoloredComponent) {
        let grid = col.grid();
        let third = 3 - comp.pair.lo - comp.pair.hi;
        let bad = comp.vertices.iter().find_map(|&v| {
            grid.neighbors(v)
                .find(|&w| !comp.contains(w) && col.color(w) != third)
        });
        self.check(NEIGHBOR_COLOR, col, bad.is_none(), || {
            format!(
                "{} next to a {:?} component is not third-colored",
                bad.unwrap(),
                comp.pair
            )
        });
    }

    fn walks(&mut self, col: &Coloring, comp: &BicoloredComponent) {
        let view = normalized_view(col, comp);
        let grid = view.grid();
        let walk = boundary_walk(grid, &view.component);
        let pws = match partial_walks(grid, &view.component, &walk) {
            Ok(p) => p,
            Err(e) => {
                self.check(CLAUSE[0], col, false, || format!("no partial walks: {e}"));
                return;
            }
        };
        if comp.class().is_partial() && pws.len() > 1 {
            self.report.partial_with_extra_walks += 1;
            self.report
                .extra_walk_example
                .get_or_insert_with(|| col.to_text());
        }
        for pw in &pws {
            let report = match check_walk_clauses(&view.coloring, &view.component, pw) {
                Ok(r) => r,
                Err(BoundaryError::SingleEdge) => {
                    self.check(CLAUSE[0], col, false, || {
                        "component is a single edge".into()
                    });
                    continue;
                }
                Err(e) => {
                    self.check(CLAUSE[0], col, false, || e.to_string());
                    continue;
                }
            };
            for c in &report.clauses {
                let at = comp.vertices[0];
                self.check(CLAUSE[c.clause - 1], col, c.holds, || {
                    format!(
                        "component at {at}, walk from {}: {}",
                        view.to_original(pw.first()),
                        c.detail.clone().unwrap_or_default()
                    )
                });
            }
            if report.r >= 3 && report.r % 2 == 1 {
                let nineties = report.angles.iter().filter(|&&a| a == 90).count();
                self.check(ANGLE_COUNT, col, nineties == (report.r - 1) / 2, || {
                    format!("{nineties} right angles on a walk of {} vertices", report.r)
                });
            }
            if report.all_hold() {
                let dc = derive_dc(&view.coloring, &view.component, pw);
                let ok = dc.as_ref().is_ok_and(|d| !d.squares.is_empty());
                self.check(SQUARES, col, ok, || match dc {
                    Ok(_) => "no squares".into(),
                    Err(e) => e.to_string(),
                });
            }
        }
    }

    fn iteration(&mut self, col: &Coloring, comp: &BicoloredComponent, cap: usize) {
        let trace = iterate_dc(col, comp, cap);
        let at = comp.vertices[0];
        match trace {
            Ok(t) => {
                self.report.max_iterations = self.report.max_iterations.max(t.iterations());
                self.check(
                    TERMINATION,
                    col,
                    t.outcome == IterationOutcome::ReachedPeripheral,
                    || format!("no peripheral component after {cap} steps from {at}"),
                );
                self.check(AREA, col, t.area_decreases(), || {
                    format!("areas {:?} from {at}", t.areas())
                });
            }
            Err(e) => self.check(TERMINATION, col, false, || format!("from {at}: {e}")),
        }
    }
}

/// Run every invariant over `corpus` (proper 3-colorings of one grid).
pub fn run_suite<'a>(
    grid: GridGraph,
    corpus: impl IntoIterator<Item = &'a Coloring>,
) -> SuiteReport {
    let small = grid.rows.min(grid.cols);
    let mut runner = Runner {
        report: SuiteReport {
            rows: grid.rows,
            cols: grid.cols,
            colorings: 0,
            checks: BTreeMap::new(),
            violation_counts: BTreeMap::new(),
            violations: Vec::new(),
            peripheral_k: (small >= 3).then_some(small + 2),
            max_iterations: 0,
            partial_with_extra_walks: 0,
            extra_walk_example: None,
        },
    };
    for col in corpus {
        runner.coloring(col);
    }
    runner.report
}

/// The suite over every proper 3-coloring of a grid with at most
/// [`EXHAUSTIVE_MAX_VERTICES`] vertices.
pub fn exhaustive_suite(rows: usize, cols: usize) -> Result<SuiteReport, SuiteError> {
    let grid = GridGraph::new(rows, cols)?;
    if grid.vertex_count() > EXHAUSTIVE_MAX_VERTICES {
        return Err(SuiteError::TooLarge {
            got: grid.vertex_count(),
            max: EXHAUSTIVE_MAX_VERTICES,
        });
    }
    let corpus = proper_colorings(grid, 3);
    Ok(run_suite(grid, &corpus))
}

pub fn random_suite(
    rows: usize,
    cols: usize,
    samples: usize,
    seed: u64,
) -> Result<SuiteReport, SuiteError> {
    let grid = GridGraph::new(rows, cols)?;
    let corpus = random_corpus(grid, samples, seed);
    Ok(run_suite(grid, &corpus))
}
