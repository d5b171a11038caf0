//! Frozen values that any refactor must reproduce.

use csf_core::cyclic_operators::{hoffman_ohno, partial, rho, rho_bar};
use csf_core::relation_engine::{csf_dimension, totient_dimension};
use csf_core::zeta_maps::{apply_alpha_tilde, apply_automorphism, apply_d, star, star_bar, Automorphism};
use csf_core::{Poly, Word};

fn p(s: &str) -> Poly {
    s.parse().unwrap()
}

fn w(s: &str) -> Poly {
    Poly::from(s.parse::<Word>().unwrap())
}

#[test]
fn operator_values() {
    assert_eq!(rho(1, &w("xy")), p("xyy - xxy"));
    assert_eq!(rho(2, &w("xy")), p("xyyy - xxxy"));
    assert_eq!(rho_bar(1, &w("xy")), p("xyy - 2*xxy"));
    assert_eq!(partial(1, &w("yxy")), p("-xyxy + yxyy - yxxy"));
    assert_eq!(hoffman_ohno(&"xy".parse().unwrap()), rho(1, &w("xy")));
}

#[test]
fn map_values() {
    assert_eq!(apply_automorphism(Automorphism::Gamma, &w("y")), p("x + y"));
    assert_eq!(apply_automorphism(Automorphism::Phi, &w("xy")), p("-xy - yy"));
    assert_eq!(apply_alpha_tilde(&w("xxy")).unwrap(), p("yyy"));
    assert!(apply_d(&w("yx")).is_err());
    assert_eq!(star(&w("xy"), &w("y")).unwrap(), p("xyy + yxy + xxy"));
    assert_eq!(star_bar(&w("y"), &w("y")).unwrap(), p("2*yy - xy"));
}

#[test]
fn dimension_table_subset() {
    let cells = [((3, 1), 1), ((6, 1), 6), ((8, 1), 18), ((7, 2), 11), ((8, 3), 13), ((9, 4), 15), ((9, 7), 1)];
    for ((weight, n), dim) in cells {
        assert_eq!(csf_dimension(n, weight - n).unwrap(), dim, "weight {weight}, n {n}");
    }
    for d in 2..=10 {
        assert_eq!(totient_dimension(d), csf_dimension(1, d).unwrap() as i64, "d = {d}");
    }
}
