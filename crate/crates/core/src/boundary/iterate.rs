use serde::Serialize;

use super::{boundary_walk, derive_dc, normalized_view, partial_walks, rc_area, BoundaryError};
use crate::coloring::Coloring;
use crate::components::{component_from_vertices, BicoloredComponent, ColorPair, ComponentClass};
use crate::grid::{Symmetry, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub pair: ColorPair,
    pub class: ComponentClass,
    pub size: usize,
    pub vertices: Vec<Vertex>,
    pub normalization: Option<Symmetry>,
    /// Ends of the first partial walk, in the original frame. Absent on the
    /// final peripheral step.
    pub v1: Option<Vertex>,
    pub vr: Option<Vertex>,
    /// Enclosed cell count, measured in the normalized frame.
    pub area: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IterationOutcome {
    ReachedPeripheral,
    CapExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DcTrace {
    pub steps: Vec<TraceStep>,
    pub outcome: IterationOutcome,
}

impl DcTrace {
    /// Number of replacements performed.
    pub fn iterations(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn areas(&self) -> Vec<usize> {
        self.steps.iter().filter_map(|s| s.area).collect()
    }

    /// Whether every area is smaller than the one two steps earlier.
    pub fn area_decreases(&self) -> bool {
        let a = self.areas();
        a.windows(3).all(|w| w[2] < w[0])
    }

    pub fn last(&self) -> &TraceStep {
        self.steps.last().expect("trace is never empty")
    }
}

/// Replace `start` by its neighboring `{c1, c3}` component until a
/// peripheral component appears or `step_cap` replacements have been made.
pub fn iterate_dc(
    col: &Coloring,
    start: &BicoloredComponent,
    step_cap: usize,
) -> Result<DcTrace, BoundaryError> {
    if !start.class().touches_side() {
        return Err(BoundaryError::Interior);
    }
    if !start.truly_bicolored {
        return Err(BoundaryError::NotBicolored);
    }
    let mut steps = Vec::new();
    let mut cur = start.clone();
    loop {
        let mut step = TraceStep {
            pair: cur.pair,
            class: cur.class(),
            size: cur.len(),
            vertices: cur.vertices.clone(),
            normalization: cur.classification.normalization,
            v1: None,
            vr: None,
            area: None,
        };
        if cur.class() == ComponentClass::Peripheral {
            steps.push(step);
            return Ok(DcTrace {
                steps,
                outcome: IterationOutcome::ReachedPeripheral,
            });
        }
        if steps.len() == step_cap {
            steps.push(step);
            return Ok(DcTrace {
                steps,
                outcome: IterationOutcome::CapExceeded,
            });
        }
        let view = normalized_view(col, &cur);
        let walk = boundary_walk(view.grid(), &view.component);
        let pw = partial_walks(view.grid(), &view.component, &walk)?
            .into_iter()
            .next()
            .ok_or(BoundaryError::TooShort(0))?;
        step.area = Some(rc_area(view.grid(), &pw)?);
        step.v1 = Some(view.to_original(pw.first()));
        step.vr = Some(view.to_original(pw.last()));
        let dc = derive_dc(&view.coloring, &view.component, &pw)?;
        let back = dc
            .component
            .vertices
            .iter()
            .map(|&v| view.to_original(v))
            .collect();
        steps.push(step);
        cur = component_from_vertices(col, dc.component.pair, back);
    }
}
