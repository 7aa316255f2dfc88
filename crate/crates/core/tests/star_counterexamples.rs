//! Exhaustive confirmation of the star instances where the closed-form span
//! `n - sigma + r` is too large.

use lt1::checker::validate;
use lt1::io::{generate, FamilySpec};
use lt1::solver::brute_force_span;
use lt1::{Colouring, TSet};

const CASES: &[(usize, &[u32], u32)] = &[
    (2, &[0, 2], 2),
    (3, &[0, 3], 3),
    (4, &[0, 3], 4),
    (2, &[0, 2, 3], 2),
    (4, &[0, 4], 4),
    (5, &[0, 4], 5),
    (6, &[0, 4], 6),
    (3, &[0, 2, 4], 4),
    (3, &[0, 3, 4], 3),
    (4, &[0, 3, 4], 4),
    (2, &[0, 1, 3, 4], 4),
    (2, &[0, 2, 3, 4], 2),
];

#[test]
fn brute_force_agrees_with_counterexample_spans() {
    for &(n, elements, span) in CASES {
        let t = TSet::new(elements.iter().copied()).unwrap();
        let formula = (n as u32 - t.sigma()) + t.r();
        assert!(span < formula);
        let g = generate(&FamilySpec::Star(n)).unwrap();
        let r = brute_force_span(&g, &t, span).unwrap();
        assert_eq!(r.lambda, span, "star:{n} T={{{t}}}");
    }
}

#[test]
fn interior_centre_beats_centre_zero() {
    let t = TSet::new([0, 2]).unwrap();
    let p3 = generate(&FamilySpec::Star(2)).unwrap();
    assert!(validate(&p3, &t, &Colouring::new(vec![1, 0, 2]))
        .unwrap()
        .is_empty());

    let t = TSet::new([0, 3]).unwrap();
    let k13 = generate(&FamilySpec::Star(3)).unwrap();
    assert!(validate(&k13, &t, &Colouring::new(vec![1, 0, 2, 3]))
        .unwrap()
        .is_empty());
}
