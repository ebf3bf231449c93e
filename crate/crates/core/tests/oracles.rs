mod common;

use pkgrid::solver::feasible_with;
use pkgrid::suite::{proper_colorings, random_corpus};
use pkgrid::{
    enumerate_paths, has_bicolored_path, longest_bicolored_path, Coloring, GridGraph, Limits,
    SymmetryOptions,
};

#[test]
fn feasibility_matches_enumeration_on_small_grids() {
    for (m, n) in common::shapes(12) {
        for c in 1..=3u8 {
            // longest two-colored path of every proper coloring, capped at 7
            let longest: Vec<usize> = common::all_proper(m, n, c)
                .iter()
                .map(|col| common::longest_two_color_path(m, n, col.colors(), 7))
                .collect();
            for k in 3..=6 {
                let expected = longest.iter().any(|&l| l < k);
                for sym in [
                    SymmetryOptions::default(),
                    SymmetryOptions::off(),
                    SymmetryOptions {
                        canonical_colors: true,
                        mirror: false,
                    },
                    SymmetryOptions {
                        canonical_colors: false,
                        mirror: true,
                    },
                ] {
                    let f = feasible_with(m, n, Some(k), c as usize, &Limits::none(), sym).unwrap();
                    assert_eq!(
                        f.witness().is_some(),
                        expected,
                        "{m}x{n} k={k} c={c} {sym:?}"
                    );
                    assert_eq!(f.is_exhausted(), !expected);
                }
            }
        }
    }
}

#[test]
fn solver_enumerator_counts_match_filtering() {
    for (m, n) in common::shapes(9) {
        let g = GridGraph::new(m, n).unwrap();
        assert_eq!(
            proper_colorings(g, 3).len(),
            common::all_proper(m, n, 3).len(),
            "{m}x{n}"
        );
    }
}

#[test]
fn path_inventory_matches_brute_force() {
    for m in 1..=4 {
        for n in 1..=4 {
            let g = GridGraph::new(m, n).unwrap();
            for k in 1..=8 {
                let paths = enumerate_paths(g, k);
                assert_eq!(paths.len(), common::count_paths(m, n, k), "{m}x{n} k={k}");
                for p in &paths {
                    assert!(p[0] <= p[k - 1]);
                    assert!(p.windows(2).all(|w| g.adjacent(w[0], w[1])));
                }
            }
        }
    }
}

#[test]
fn random_five_by_five_agrees_with_naive_search() {
    let g = GridGraph::new(5, 5).unwrap();
    for col in random_corpus(g, 200, 99) {
        let longest = common::longest_two_color_path(5, 5, col.colors(), 6);
        for k in 3..=6 {
            let w = has_bicolored_path(&col, k).unwrap();
            assert_eq!(w.is_some(), longest >= k, "{}", col.to_text());
        }
    }
}

#[test]
fn longest_path_matches_naive_maximum() {
    for (m, n) in [(2, 3), (3, 3), (2, 4)] {
        for col in common::all_proper(m, n, 3) {
            let report = longest_bicolored_path(&col, u64::MAX).unwrap();
            let naive = common::longest_two_color_path(m, n, col.colors(), usize::MAX);
            assert_eq!(report.overall, naive, "{}", col.to_text());
            for p in &report.per_pair {
                if let Some(w) = &p.witness {
                    assert!(w.is_valid_for(&col));
                    assert_eq!(w.order(), p.order);
                }
            }
        }
    }
}

#[test]
fn witnesses_alternate_and_orders_are_monotone() {
    let g = GridGraph::new(4, 4).unwrap();
    for col in random_corpus(g, 100, 5) {
        let mut absent = false;
        for k in 3..=10 {
            match has_bicolored_path(&col, k).unwrap() {
                Some(w) => {
                    assert!(
                        !absent,
                        "path of order {k} after a smaller order was absent"
                    );
                    assert!(w.is_valid_for(&col));
                    let cs: Vec<_> = w.vertices.iter().map(|&v| col.color(v)).collect();
                    assert!(cs.windows(2).all(|p| p[0] != p[1]));
                    assert!(cs.iter().step_by(2).all(|&c| c == cs[0]));
                }
                None => absent = true,
            }
        }
    }
}

#[test]
fn checkerboard_witness_is_lexicographically_first() {
    let col = Coloring::parse("2 3 2\n0 1 0\n1 0 1\n").unwrap();
    let w = has_bicolored_path(&col, 3).unwrap().unwrap();
    let first: Vec<(usize, usize)> = w.vertices.iter().map(|v| (v.row, v.col)).collect();
    assert_eq!(first, vec![(0, 0), (0, 1), (0, 2)]);
}
