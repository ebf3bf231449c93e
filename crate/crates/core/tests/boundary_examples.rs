//! Walks, angles and neighbor structures on hand-built components.

use pkgrid::{
    angle_sequence, bicolored_components, boundary_walk, check_walk_clauses, component_containing,
    derive_dc, iterate_dc, normalized_view, partial_walks, rc_area, ColorPair, Coloring,
    ComponentClass, IterationOutcome, PartialWalk, Vertex,
};

fn v(r: usize, c: usize) -> Vertex {
    Vertex::new(r, c)
}

/// Columns u, w, x, y, z are 0..4 and rows 1..5 are 0..4.
fn five_by_five() -> Coloring {
    Coloring::parse(
        "5 5 3\n\
         2 0 2 1 0\n\
         0 1 0 2 1\n\
         2 0 2 1 0\n\
         0 1 0 2 1\n\
         2 0 2 1 0\n",
    )
    .unwrap()
}

fn walks_of(col: &Coloring, start: Vertex, pair: ColorPair) -> Vec<PartialWalk> {
    let comp = component_containing(col, pair, start).unwrap();
    let view = normalized_view(col, &comp);
    let walk = boundary_walk(view.grid(), &view.component);
    partial_walks(view.grid(), &view.component, &walk)
        .unwrap()
        .into_iter()
        .map(|pw| PartialWalk {
            vertices: pw.vertices.iter().map(|&x| view.to_original(x)).collect(),
            start_position: pw.start_position,
        })
        .collect()
}

fn red_blue() -> ColorPair {
    ColorPair::new(0, 1).unwrap()
}

#[test]
fn right_column_component_has_one_nine_vertex_walk() {
    let col = five_by_five();
    let comp = component_containing(&col, red_blue(), v(0, 4)).unwrap();
    assert_eq!(comp.class(), ComponentClass::Peripheral);
    let walks = walks_of(&col, v(0, 4), red_blue());
    assert_eq!(walks.len(), 1);
    let expected = vec![
        v(4, 3),
        v(4, 4),
        v(3, 4),
        v(2, 4),
        v(2, 3),
        v(2, 4),
        v(1, 4),
        v(0, 4),
        v(0, 3),
    ];
    assert_eq!(walks[0].vertices, expected);
    assert_eq!(
        angle_sequence(&walks[0]).unwrap(),
        vec![90, 180, 90, 360, 90, 180, 90]
    );
}

#[test]
fn second_column_component_splits_at_the_left_side() {
    let col = five_by_five();
    let walks = walks_of(&col, v(0, 1), red_blue());
    let listed: Vec<Vec<Vertex>> = walks.iter().map(|w| w.vertices.clone()).collect();
    let expected = [
        vec![
            v(0, 1),
            v(1, 1),
            v(1, 2),
            v(1, 1),
            v(2, 1),
            v(3, 1),
            v(3, 2),
            v(3, 1),
            v(4, 1),
        ],
        vec![v(4, 1), v(3, 1), v(3, 0)],
        vec![v(3, 0), v(3, 1), v(2, 1), v(1, 1), v(1, 0)],
        vec![v(1, 0), v(1, 1), v(0, 1)],
    ];
    assert_eq!(listed.len(), 4);
    for e in &expected {
        assert!(listed.contains(e), "missing walk {e:?}");
    }
    let comp = component_containing(&col, red_blue(), v(0, 1)).unwrap();
    for w in &walks {
        let report = check_walk_clauses(&col, &comp, w).unwrap();
        assert!(report.all_hold(), "{report:?}");
    }
}

#[test]
fn plus_shape_alternates_right_angles_and_backtracks() {
    // center (1,2) with arms up to the top side and out to three neighbors
    let col = Coloring::parse(
        "4 5 3\n\
         0 2 1 2 0\n\
         2 1 0 1 2\n\
         0 2 1 2 0\n\
         1 0 2 0 1\n",
    )
    .unwrap();
    let comp = component_containing(&col, red_blue(), v(1, 2)).unwrap();
    assert_eq!(comp.len(), 5);
    assert_eq!(comp.class(), ComponentClass::PartialType1);
    let walks = walks_of(&col, v(1, 2), red_blue());
    assert_eq!(walks.len(), 1);
    assert_eq!(walks[0].r(), 9);
    assert_eq!(
        angle_sequence(&walks[0]).unwrap(),
        vec![90, 360, 90, 360, 90, 360, 90]
    );
    let report = check_walk_clauses(&col, &comp, &walks[0]).unwrap();
    assert!(report.holds(4));
    assert!(report.all_hold());
}

#[test]
fn smallest_corner_case_builds_one_square() {
    let col = Coloring::parse("3 3 3\n0 1 2\n1 2 0\n2 0 1\n").unwrap();
    let comp = component_containing(&col, red_blue(), v(0, 0)).unwrap();
    let view = normalized_view(&col, &comp);
    let walk = boundary_walk(view.grid(), &view.component);
    let pw = partial_walks(view.grid(), &view.component, &walk)
        .unwrap()
        .remove(0);
    assert_eq!(pw.r(), 3);
    let dc = derive_dc(&view.coloring, &view.component, &pw).unwrap();
    assert_eq!(dc.squares.len(), 1);
    for x in [pw.vertices[0], dc.fourth_corners[0], pw.vertices[2]] {
        assert!(dc.component.contains(x));
    }
    assert_eq!(dc.c3, 2);
}

#[test]
fn every_corner_of_three_by_three_iterates_to_a_peripheral_component() {
    let mut runs = 0;
    for col in pkgrid::suite::proper_colorings(pkgrid::GridGraph::new(3, 3).unwrap(), 3) {
        for pair in ColorPair::all(3) {
            for comp in bicolored_components(&col, pair) {
                if !comp.truly_bicolored || !comp.class().touches_side() {
                    continue;
                }
                let trace = iterate_dc(&col, &comp, 50).unwrap();
                assert_eq!(trace.outcome, IterationOutcome::ReachedPeripheral);
                assert!(trace.area_decreases());
                runs += 1;
            }
        }
    }
    assert!(runs > 0);
}

#[test]
fn area_bounded_by_cell_count() {
    for col in pkgrid::suite::random_corpus(pkgrid::GridGraph::new(5, 5).unwrap(), 50, 3) {
        for pair in ColorPair::all(3) {
            for comp in bicolored_components(&col, pair) {
                if !comp.truly_bicolored || !comp.class().is_partial() {
                    continue;
                }
                let view = normalized_view(&col, &comp);
                let walk = boundary_walk(view.grid(), &view.component);
                for pw in partial_walks(view.grid(), &view.component, &walk).unwrap() {
                    let a = rc_area(view.grid(), &pw).unwrap();
                    assert!(a <= 16);
                }
            }
        }
    }
}

#[test]
fn checkerboard_is_one_peripheral_component() {
    let col = Coloring::parse("3 3 2\n0 1 0\n1 0 1\n0 1 0\n").unwrap();
    let comps = bicolored_components(&col, red_blue());
    assert_eq!(comps.len(), 1);
    assert_eq!(comps[0].class(), ComponentClass::Peripheral);
}
