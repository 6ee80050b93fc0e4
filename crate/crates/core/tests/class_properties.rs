mod common;

use std::collections::HashMap;

use common::{battery, juxtapositions, naive_all, naive_contains, p};
use gridbasis::grid::Classification;
use gridbasis::{verify_lemma3, EnumConfig, Grid2x2, GridSpec, Permutation, Symmetry};

fn classify_all(g: &Grid2x2, max_len: usize) -> HashMap<Permutation, Classification> {
    (0..=max_len)
        .flat_map(naive_all)
        .map(|q| (q.clone(), g.classify(&q)))
        .collect()
}

#[test]
fn grid_f_and_squint_classes_are_downward_closed() {
    for g in battery() {
        let table = classify_all(&g, 7);
        for (q, c) in &table {
            if q.is_empty() {
                assert!(c.grid && c.f && c.squint_a && c.squint_b);
                continue;
            }
            for d in q.deletions().unwrap() {
                let cd = table[&d];
                assert!(!c.grid || cd.grid, "{g}: {q} in grid, {d} not");
                assert!(!c.f || cd.f, "{g}: {q} in F, {d} not");
                assert!(!c.squint_a || cd.squint_a, "{g}: {q} in A, {d} not");
                assert!(!c.squint_b || cd.squint_b, "{g}: {q} in B, {d} not");
            }
        }
    }
}

#[test]
fn superclass_is_union_of_squints() {
    for g in battery() {
        for (q, c) in classify_all(&g, 7) {
            assert_eq!(c.f, c.squint_a || c.squint_b, "{g}: {q}");
            // the single-pass classification agrees with the separate deciders
            assert_eq!(c.grid, g.contains(&q));
            assert_eq!(c.f, g.f_contains(&q));
            assert_eq!(c.squint_a, g.squint_contains(&q, gridbasis::Side::A));
            assert_eq!(c.squint_b, g.squint_contains(&q, gridbasis::Side::B));
        }
    }
}

#[test]
fn grid_is_intersection_of_squints_to_length_8() {
    let cfg = EnumConfig::new(8).with_workers(4);
    for g in battery() {
        let verdict = verify_lemma3(&g, &cfg).unwrap();
        assert!(verdict.passed(), "{g}: {verdict}");
    }
}

#[test]
fn griddings_slice_into_cell_members() {
    for g in battery() {
        for q in (0..=7).flat_map(naive_all) {
            let Some(w) = g.gridding(&q) else { continue };
            let n = q.len();
            let cell = |left: bool, top: bool| -> Permutation {
                let positions: Vec<usize> = (1..=n)
                    .filter(|&i| (i <= w.v) == left && (q.ranks()[i - 1] as usize > w.h) == top)
                    .collect();
                q.pattern_of(&positions).unwrap()
            };
            assert!(g.top_left.contains(&cell(true, true)), "{g} {q} {w:?}");
            assert!(g.top_right.contains(&cell(false, true)), "{g} {q} {w:?}");
            assert!(g.bottom_left.contains(&cell(true, false)), "{g} {q} {w:?}");
            assert!(g.bottom_right.contains(&cell(false, false)), "{g} {q} {w:?}");
        }
    }
}

#[test]
fn squint_and_f_witnesses_are_valid_divisions() {
    for g in battery() {
        for q in (0..=6).flat_map(naive_all) {
            for (side, t) in [
                (None, g.f_triple(&q)),
                (Some(gridbasis::Side::A), g.squint_triple(&q, gridbasis::Side::A)),
                (Some(gridbasis::Side::B), g.squint_triple(&q, gridbasis::Side::B)),
            ] {
                let Some(t) = t else { continue };
                let d = g.division(&q, t.v);
                assert!(d.left.contains(t.l) && d.right.contains(t.r), "{g} {q} {t:?}");
                match side {
                    Some(gridbasis::Side::A) => assert!(t.l <= t.r),
                    Some(gridbasis::Side::B) => assert!(t.l >= t.r),
                    None => {}
                }
            }
        }
    }
}

#[test]
fn membership_is_transported_by_symmetries() {
    let mut grids: Vec<GridSpec> = battery().into_iter().map(GridSpec::Square).collect();
    grids.extend(juxtapositions());
    for g in grids {
        for sym in Symmetry::ALL {
            let image = g.apply(sym);
            for q in (0..=6).flat_map(naive_all) {
                assert_eq!(g.contains(&q), image.contains(&q.apply(sym)), "{g} {sym:?} {q}");
            }
        }
    }
}

#[test]
fn increasing_juxtaposition_rejects_exactly_three_patterns() {
    let juxt: GridSpec = "[inc|inc]".parse().unwrap();
    let forbidden = [p("321"), p("2143"), p("3142")];
    for q in (0..=6).flat_map(naive_all) {
        let avoids = forbidden.iter().all(|b| !naive_contains(b.ranks(), q.ranks()));
        assert_eq!(juxt.contains(&q), avoids, "{q}");
    }
}

#[test]
fn every_shape_admits_the_empty_permutation() {
    let mut grids: Vec<GridSpec> = battery().into_iter().map(GridSpec::Square).collect();
    grids.extend(juxtapositions());
    grids.push("[empty empty; empty empty]".parse().unwrap());
    for g in grids {
        assert!(g.contains(&Permutation::empty()), "{g}");
    }
}

#[test]
fn dsl_round_trips() {
    let mut grids: Vec<GridSpec> = battery().into_iter().map(GridSpec::Square).collect();
    grids.extend(juxtapositions());
    grids.push("[all empty; Av(4321,[10,9,8,7,6,5,4,3,2,1]) Av(2413,3142)]".parse().unwrap());
    for g in grids {
        let text = g.to_string();
        assert_eq!(text.parse::<GridSpec>().unwrap(), g, "{text}");
    }
}
