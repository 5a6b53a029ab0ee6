use proptest::prelude::*;

use super::*;
use crate::samples::{self, random_cell_square};

fn q(n: i64) -> Scalar {
    Scalar::from_integer(n)
}

/// Four positive rationals on a line, acted on by multiplication.
fn line() -> PreordObject {
    PreordObject::numeric(1, vec![vec![q(1)], vec![q(2)], vec![Scalar::new(5, 2)], vec![q(4)]]).unwrap()
}

fn times(x: &PreordObject, k: i64) -> MonotoneMap {
    MonotoneMap::matrix(x, x, vec![vec![q(k)]]).unwrap()
}

#[test]
fn multiplication_maps_and_cells() {
    let x = line();
    let (f, g) = (times(&x, 4), times(&x, 2));
    assert!(is_two_cell(q(2), &f, &g).unwrap());
    assert!(!is_two_cell(q(3), &f, &g).unwrap());
    assert!(is_two_cell(q(1), &f, &f).unwrap());
    assert_eq!(max_cell_value(&f, &g).unwrap(), Some(Some(q(2))));
    assert!(matches!(is_two_cell(q(0), &f, &g), Err(PreordError::NonPositive(_))));
}

#[test]
fn vertical_composite_multiplies() {
    let x = line();
    let (f, g, h) = (times(&x, 8), times(&x, 4), times(&x, 2));
    let c = CentralCell::new(q(2), f.clone(), g.clone()).unwrap();
    let d = CentralCell::new(q(2), g.clone(), h.clone()).unwrap();
    let dc = compose_cells(Mode::Vertical, &d, &c).unwrap();
    assert_eq!(dc.value(), q(4));
    assert!(is_two_cell(q(4), &f, &h).unwrap());
    let one = CentralCell::identity(&f).unwrap();
    assert_eq!(compose_cells(Mode::Vertical, &c, &one).unwrap(), c);
    assert!(matches!(compose_cells(Mode::Vertical, &c, &d), Err(PreordError::NotComposable(_))));
}

#[test]
fn horizontal_composite_matches_vertical_value() {
    let x = line();
    let c = CentralCell::new(q(2), times(&x, 4), times(&x, 2)).unwrap();
    let d = CentralCell::new(q(3), times(&x, 3), times(&x, 1)).unwrap();
    let h = compose_cells(Mode::Horizontal, &d, &c).unwrap();
    assert_eq!(h.value(), q(6));
    assert_eq!(h.src(), &times(&x, 12));
    assert_eq!(h.tgt(), &times(&x, 2));
}

#[test]
fn interchange_with_two_three_five_seven() {
    let x = line();
    let m = |k| times(&x, k);
    let c = CentralCell::new(q(2), m(420), m(210)).unwrap();
    let c2 = CentralCell::new(q(3), m(210), m(70)).unwrap();
    let d = CentralCell::new(q(5), m(35), m(7)).unwrap();
    let d2 = CentralCell::new(q(7), m(7), m(1)).unwrap();
    let r = check_interchange(&c, &c2, &d, &d2).unwrap();
    assert_eq!((r.vertical_first, r.horizontal_first), (q(210), q(210)));
    assert!(r.holds);
    let one = CentralCell::identity(&m(1)).unwrap();
    assert!(check_interchange(&one, &one, &one, &one).unwrap().holds);
}

#[test]
fn finite_objects_with_trivial_action() {
    let carrier = vec!["lo".to_string(), "hi".to_string()];
    let leq = vec![vec![true, true], vec![false, true]];
    let x = PreordObject::Finite(FiniteObject::new(carrier, leq, FiniteAction::Trivial).unwrap());
    let id = MonotoneMap::identity(&x);
    assert!(is_two_cell(q(1), &id, &id).unwrap());
    assert!(is_two_cell(q(7), &id, &id).unwrap());
    let swap = MonotoneMap::table(&x, &x, vec![1, 0]);
    assert!(matches!(swap, Err(PreordError::InvalidMap(_))));
    let top = MonotoneMap::table(&x, &x, vec![1, 1]).unwrap();
    assert!(is_two_cell(q(1), &top, &id).unwrap());
    assert!(!is_two_cell(q(1), &id, &top).unwrap());
}

#[test]
fn finite_objects_with_generated_action() {
    // 0 < 1 < 2, doubling moves one step up and saturates.
    let carrier: Vec<String> = ["0", "1", "2"].iter().map(|s| s.to_string()).collect();
    let leq = (0..3).map(|i| (0..3).map(|j| i <= j).collect()).collect();
    let gens = [(q(2), vec![1, 2, 2])].into_iter().collect();
    let x = PreordObject::Finite(FiniteObject::new(carrier.clone(), leq, FiniteAction::Generated(gens)).unwrap());
    assert_eq!(x.act(q(4), &Point::Element(0)).unwrap(), Point::Element(2));
    assert!(matches!(x.act(q(3), &Point::Element(0)), Err(PreordError::NotGenerated(_))));
    let id = MonotoneMap::identity(&x);
    assert!(is_two_cell(q(1), &id, &id).unwrap());
    assert!(!is_two_cell(q(2), &id, &id).unwrap());
    let up = MonotoneMap::table(&x, &x, vec![1, 2, 2]).unwrap();
    assert!(is_two_cell(q(2), &up, &id).unwrap());
    // Constant maps are monotone but not equivariant here.
    assert!(MonotoneMap::table(&x, &x, vec![0, 0, 0]).is_err());

    let bad_leq = vec![vec![true, true, false], vec![false, true, true], vec![false, false, true]];
    let bad = FiniteObject::new(carrier.clone(), bad_leq, FiniteAction::Trivial);
    assert!(matches!(bad, Err(PreordError::InvalidObject(_))));
    let leq = (0..3).map(|i| (0..3).map(|j| i <= j).collect()).collect();
    let clash = [(q(2), vec![1, 2, 2]), (q(4), vec![0, 1, 2])].into_iter().collect();
    assert!(FiniteObject::new(carrier, leq, FiniteAction::Generated(clash)).is_err());
}

#[test]
fn parallel_checks() {
    let x = line();
    let y = PreordObject::numeric(2, vec![vec![q(1), q(0)], vec![q(0), q(1)]]).unwrap();
    let f = times(&x, 2);
    let g = MonotoneMap::matrix(&x, &y, vec![vec![q(1)], vec![q(1)]]).unwrap();
    assert_eq!(is_two_cell(q(1), &f, &g), Err(PreordError::NotParallel));
    assert!(MonotoneMap::matrix(&x, &y, vec![vec![q(1)]]).is_err());
    assert!(MonotoneMap::matrix(&x, &x, vec![vec![q(-1)]]).is_err());
}

#[test]
fn file_checks_report_everything() {
    let json = r#"{
        "objects": {"X": {"numeric": {"dim": 1, "sample": [[1], [2], ["5/2"], [4]]}}},
        "maps": {
            "f": {"dom": "X", "cod": "X", "matrix": [[8]]},
            "g": {"dom": "X", "cod": "X", "matrix": [[4]]},
            "h": {"dom": "X", "cod": "X", "matrix": [[2]]}
        },
        "cells": {
            "c": {"value": 2, "src": "f", "tgt": "g"},
            "d": {"value": "2", "src": "g", "tgt": "h"},
            "bad": {"value": "3", "src": "g", "tgt": "h"}
        },
        "compose": [{"mode": "vertical", "second": "d", "first": "c"}],
        "interchange": [["c", "d", "c", "d"]]
    }"#;
    let file: PreordFile = serde_json::from_str(json).unwrap();
    let report = check_file(&file).unwrap();
    assert!(!report.ok);
    assert_eq!(report.compose[0].value.as_deref(), Some("4"));
    assert!(!report.cells.iter().find(|c| c.name == "bad").unwrap().valid);
    assert!(report.interchange[0].holds);
    assert_eq!(report.interchange[0].vertical_first.as_deref(), Some("16"));

    let bad: Result<PreordFile, _> = serde_json::from_str(r#"{"objects": {"X": {"numeric": {"dim": 1, "sample": [[0.5]]}}}}"#);
    assert!(bad.is_err());
    let unknown: PreordFile = serde_json::from_str(r#"{"objects": {}, "maps": {"f": {"dom": "X", "cod": "X", "matrix": [[1]]}}}"#).unwrap();
    assert!(matches!(check_file(&unknown), Err(PreordError::Schema(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn random_squares_satisfy_interchange(seed in any::<u64>()) {
        let s = random_cell_square(&mut samples::rng(seed));
        for cell in [&s.c, &s.c2, &s.d, &s.d2] {
            prop_assert!(is_two_cell(cell.value(), cell.src(), cell.tgt()).unwrap());
            prop_assert!(CentralCell::identity(cell.src()).is_ok());
        }
        let v = compose_cells(Mode::Vertical, &s.c2, &s.c).unwrap();
        prop_assert_eq!(v.value(), s.c.value() * s.c2.value());
        let h = compose_cells(Mode::Horizontal, &s.d, &s.c).unwrap();
        prop_assert!(is_two_cell(h.value(), h.src(), h.tgt()).unwrap());
        let r = check_interchange(&s.c, &s.c2, &s.d, &s.d2).unwrap();
        prop_assert!(r.holds);
        prop_assert_eq!(r.vertical_first, s.c.value() * s.c2.value() * s.d.value() * s.d2.value());
    }

    #[test]
    fn composite_cells_satisfy_the_transitivity_chain(seed in any::<u64>()) {
        let s = random_cell_square(&mut samples::rng(seed));
        let (f, g, h) = (s.c.src(), s.c.tgt(), s.c2.tgt());
        let (c, d) = (s.c.value(), s.c2.value());
        for (x, y) in f.dom().comparable_pairs() {
            let (fx, gy, hy) = (f.apply(&x), g.apply(&y), h.apply(&y));
            let cod = f.cod();
            prop_assert!(cod.leq(&cod.act(c, &gy).unwrap(), &fx));
            prop_assert!(cod.leq(&cod.act(d, &hy).unwrap(), &gy));
            prop_assert!(cod.leq(&cod.act(c * d, &hy).unwrap(), &fx));
        }
    }
}
