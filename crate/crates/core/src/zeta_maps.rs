//! Automorphisms and linear maps on `Q<x,y>`, and the harmonic products.
//!
//! The harmonic products are computed on the z-encoding: a word of `H^1` is
//! `z_{k_1} ... z_{k_l}` and the products follow the head recursion
//!
//! ```text
//! z_p w ∗ z_q w' = z_p (w ∗ z_q w') + z_q (z_p w ∗ w') ± z_{p+q} (w ∗ w')
//! ```
//!
//! with `+` for `∗` and `-` for `∗̄`. Hoffman's `∗` is not written out in full
//! in the source material; its recursion is the one that appears inside the
//! proof that `zw ∗ z_q w' = z(w ∗ z_q w') + z_q(zw ∗ w')`, and it is
//! cross-checked against [`stuffle_oracle`], an independent enumeration.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::free_algebra::{index_from_word, rat, word_from_index, Index, Letter, Poly, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Automorphism {
    /// `x ↦ x, y ↦ x + y`
    Gamma,
    /// `x ↦ x, y ↦ y - x`
    GammaInv,
    /// `x ↦ x + y, y ↦ -y`
    Phi,
    /// `x ↦ y, y ↦ x`
    Alpha,
}

impl Automorphism {
    pub fn letter_image(self, l: Letter) -> Poly {
        let x = || Poly::from(Word::x());
        let y = || Poly::from(Word::y());
        match (self, l) {
            (Automorphism::Gamma, Letter::X) => x(),
            (Automorphism::Gamma, Letter::Y) => x() + y(),
            (Automorphism::GammaInv, Letter::X) => x(),
            (Automorphism::GammaInv, Letter::Y) => y() - x(),
            (Automorphism::Phi, Letter::X) => x() + y(),
            (Automorphism::Phi, Letter::Y) => -y(),
            (Automorphism::Alpha, Letter::X) => y(),
            (Automorphism::Alpha, Letter::Y) => x(),
        }
    }

    pub fn apply_word(self, w: &Word) -> Poly {
        let images = [self.letter_image(Letter::X), self.letter_image(Letter::Y)];
        w.letters().iter().fold(Poly::one(), |acc, &l| {
            acc.concat(&images[usize::from(l == Letter::Y)])
        })
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Automorphism::Gamma => "gamma",
            Automorphism::GammaInv => "gamma-inv",
            Automorphism::Phi => "phi",
            Automorphism::Alpha => "alpha",
        })
    }
}

impl FromStr for Automorphism {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "gamma" => Ok(Automorphism::Gamma),
            "gamma-inv" => Ok(Automorphism::GammaInv),
            "phi" => Ok(Automorphism::Phi),
            "alpha" => Ok(Automorphism::Alpha),
            _ => Err(Error::Parse(format!("unknown automorphism `{s}`"))),
        }
    }
}

pub fn apply_automorphism(name: Automorphism, p: &Poly) -> Poly {
    let images = [name.letter_image(Letter::X), name.letter_image(Letter::Y)];
    p.map_words(|w| {
        w.letters()
            .iter()
            .fold(Poly::one(), |acc, &l| acc.concat(&images[usize::from(l == Letter::Y)]))
    })
}

/// Applies `wy ↦ f(w) y` word by word; the unit maps to itself.
fn map_before_last_y(p: &Poly, name: Automorphism) -> Result<Poly> {
    p.try_map_words(|w| {
        if w.is_unit() {
            return Ok(Poly::one());
        }
        let head = w.strip_trailing_y().ok_or_else(|| Error::NotInH1(w.clone()))?;
        Ok(name.apply_word(&head).right_mul_word(&Word::y()))
    })
}

/// `d(wy) = γ(w) y`, `d(1) = 1`.
pub fn apply_d(p: &Poly) -> Result<Poly> {
    map_before_last_y(p, Automorphism::Gamma)
}

/// `d⁻¹(wy) = γ⁻¹(w) y`.
pub fn apply_d_inverse(p: &Poly) -> Result<Poly> {
    map_before_last_y(p, Automorphism::GammaInv)
}

/// `α̃(wy) = α(w) y`, `α̃(1) = 1`.
pub fn apply_alpha_tilde(p: &Poly) -> Result<Poly> {
    map_before_last_y(p, Automorphism::Alpha)
}

/// `L_x`
pub fn left_mul_x(p: &Poly) -> Poly {
    p.left_mul_word(&Word::x())
}

/// `L_x⁻¹`, defined only when every word starts with `x`.
pub fn strip_left_x(p: &Poly) -> Result<Poly> {
    let mut out = Poly::zero();
    for (w, c) in p.terms() {
        let rest = w.strip_x().ok_or_else(|| Error::NotLeftDivisible(w.clone()))?;
        out.add_term(rest, c.clone());
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Harmonic {
    /// `∗`, merge term with `+`.
    Star,
    /// `∗̄`, merge term with `-`.
    StarBar,
}

impl Harmonic {
    fn merge_sign(self) -> i64 {
        match self {
            Harmonic::Star => 1,
            Harmonic::StarBar => -1,
        }
    }
}

type IndexCombination = Rc<Vec<(Vec<u32>, i64)>>;
type HarmonicKey = (Harmonic, Vec<u32>, Vec<u32>);

const MEMO_LIMIT: usize = 200_000;

thread_local! {
    static HARMONIC_MEMO: RefCell<HashMap<HarmonicKey, IndexCombination>> = RefCell::new(HashMap::new());
}

fn harmonic_indices(kind: Harmonic, a: &[u32], b: &[u32]) -> IndexCombination {
    if a.is_empty() {
        return Rc::new(vec![(b.to_vec(), 1)]);
    }
    if b.is_empty() {
        return Rc::new(vec![(a.to_vec(), 1)]);
    }
    // ∗ and ∗̄ are commutative, so one memo entry serves both argument orders.
    let key = if a <= b {
        (kind, a.to_vec(), b.to_vec())
    } else {
        (kind, b.to_vec(), a.to_vec())
    };
    if let Some(hit) = HARMONIC_MEMO.with(|m| m.borrow().get(&key).cloned()) {
        return hit;
    }

    let (p, q) = (a[0], b[0]);
    let mut acc: HashMap<Vec<u32>, i64> = HashMap::new();
    let mut push = |head: u32, tail: &IndexCombination, scale: i64| {
        for (rest, c) in tail.iter() {
            let mut v = Vec::with_capacity(rest.len() + 1);
            v.push(head);
            v.extend_from_slice(rest);
            *acc.entry(v).or_insert(0) += scale * c;
        }
    };
    push(p, &harmonic_indices(kind, &a[1..], b), 1);
    push(q, &harmonic_indices(kind, a, &b[1..]), 1);
    push(p + q, &harmonic_indices(kind, &a[1..], &b[1..]), kind.merge_sign());

    let mut terms: Vec<(Vec<u32>, i64)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
    terms.sort();
    let out = Rc::new(terms);
    HARMONIC_MEMO.with(|m| {
        let mut m = m.borrow_mut();
        if m.len() > MEMO_LIMIT {
            m.clear();
        }
        m.insert(key, out.clone());
    });
    out
}

fn harmonic_product(kind: Harmonic, p: &Poly, q: &Poly) -> Result<Poly> {
    let lhs: Vec<(Index, _)> = p
        .terms()
        .map(|(w, c)| Ok((index_from_word(w)?, c)))
        .collect::<Result<_>>()?;
    let rhs: Vec<(Index, _)> = q
        .terms()
        .map(|(w, c)| Ok((index_from_word(w)?, c)))
        .collect::<Result<_>>()?;
    let mut out = Poly::zero();
    for (a, ca) in &lhs {
        for (b, cb) in &rhs {
            let coeff = *ca * *cb;
            for (idx, k) in harmonic_indices(kind, a.parts(), b.parts()).iter() {
                out.add_term(word_from_index(&Index::new(idx.clone())), &coeff * rat(*k));
            }
        }
    }
    Ok(out)
}

/// Hoffman's harmonic product `∗` on `H^1`.
pub fn star(p: &Poly, q: &Poly) -> Result<Poly> {
    harmonic_product(Harmonic::Star, p, q)
}

/// The zeta-star harmonic product `∗̄` on `H^1`.
pub fn star_bar(p: &Poly, q: &Poly) -> Result<Poly> {
    harmonic_product(Harmonic::StarBar, p, q)
}

pub fn harmonic(kind: Harmonic, p: &Poly, q: &Poly) -> Result<Poly> {
    harmonic_product(kind, p, q)
}

/// Brute-force `∗` on indices: walks every quasi-shuffle of `a` and `b` one by
/// one (no memoisation, no sharing with [`star`]).
pub fn stuffle_oracle(a: &Index, b: &Index) -> Poly {
    let mut out = Poly::zero();
    let mut cur = Vec::new();
    walk_stuffles(a.parts(), b.parts(), &mut cur, &mut out);
    out
}

fn walk_stuffles(a: &[u32], b: &[u32], cur: &mut Vec<u32>, out: &mut Poly) {
    if a.is_empty() && b.is_empty() {
        out.add_term(word_from_index(&Index::new(cur.clone())), rat(1));
        return;
    }
    if let Some((&p, rest)) = a.split_first() {
        cur.push(p);
        walk_stuffles(rest, b, cur, out);
        cur.pop();
    }
    if let Some((&q, rest)) = b.split_first() {
        cur.push(q);
        walk_stuffles(a, rest, cur, out);
        cur.pop();
    }
    if let (Some((&p, ra)), Some((&q, rb))) = (a.split_first(), b.split_first()) {
        cur.push(p + q);
        walk_stuffles(ra, rb, cur, out);
        cur.pop();
    }
}

/// `A_0 = 1`, `A_j = (x+y)^(j-1) y`.
pub fn a_element(j: usize) -> Poly {
    if j == 0 {
        return Poly::one();
    }
    Poly::z().pow(j - 1).right_mul_word(&Word::y())
}

/// `z_k` as a polynomial.
pub fn z_poly(k: u32) -> Poly {
    Poly::from(Word::z(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_algebra::{enumerate_words, Space};
    use proptest::prelude::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn idx(parts: &[u32]) -> Index {
        Index::new(parts.to_vec())
    }

    #[test]
    fn automorphism_examples() {
        assert_eq!(apply_automorphism(Automorphism::Gamma, &p("y")), p("x + y"));
        assert_eq!(apply_automorphism(Automorphism::Phi, &p("xy")), p("-xy - yy"));
        assert_eq!(apply_automorphism(Automorphism::Alpha, &p("xxy")), p("yyx"));
        assert_eq!(apply_automorphism(Automorphism::GammaInv, &p("yy")), p("yy - yx - xy + xx"));
    }

    #[test]
    fn d_examples() {
        assert_eq!(apply_d(&p("xy")).unwrap(), p("xy"));
        assert_eq!(apply_d(&p("yy")).unwrap(), p("xy + yy"));
        assert_eq!(apply_d(&Poly::one()).unwrap(), Poly::one());
        assert_eq!(apply_d(&p("yx")), Err(Error::NotInH1(p_word("yx"))));
    }

    fn p_word(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn alpha_tilde_examples() {
        assert_eq!(apply_alpha_tilde(&p("xy")).unwrap(), p("yy"));
        assert_eq!(apply_alpha_tilde(&p("xxy")).unwrap(), p("yyy"));
        assert_eq!(apply_alpha_tilde(&p("yy")).unwrap(), p("xy"));
        assert!(apply_alpha_tilde(&p("yyx")).is_err());
    }

    #[test]
    fn left_x_examples() {
        assert_eq!(left_mul_x(&p("yy")), p("xyy"));
        assert_eq!(strip_left_x(&p("xyy - xxy")).unwrap(), p("yy - xy"));
        assert_eq!(strip_left_x(&p("yx")), Err(Error::NotLeftDivisible(p_word("yx"))));
        assert_eq!(strip_left_x(&Poly::one()), Err(Error::NotLeftDivisible(Word::unit())));
    }

    #[test]
    fn star_examples() {
        assert_eq!(star(&p("y"), &p("y")).unwrap(), p("2*yy + xy"));
        assert_eq!(star(&p("xy"), &p("y")).unwrap(), p("xyy + yxy + xxy"));
        assert_eq!(star(&Poly::one(), &p("xy")).unwrap(), p("xy"));
        assert!(star(&p("yx"), &p("y")).is_err());
    }

    #[test]
    fn star_bar_examples() {
        assert_eq!(star_bar(&p("y"), &p("y")).unwrap(), p("2*yy - xy"));
        assert_eq!(star_bar(&p("xy"), &p("y")).unwrap(), p("xyy + yxy - xxy"));
        assert_eq!(star_bar(&Poly::one(), &p("xyxy")).unwrap(), p("xyxy"));
        assert_eq!(star_bar(&p("xyxy"), &Poly::one()).unwrap(), p("xyxy"));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(stuffle_oracle(&idx(&[1]), &idx(&[1])), p("2*yy + xy"));
        assert_eq!(stuffle_oracle(&idx(&[2]), &idx(&[1])), p("xyy + yxy + xxy"));
        assert_eq!(stuffle_oracle(&idx(&[4]), &Index::empty()), z_poly(4));
    }

    #[test]
    fn star_matches_oracle_up_to_weight_8() {
        let all = Index::up_to_weight(7);
        for a in &all {
            for b in &all {
                if a.weight() + b.weight() > 8 {
                    continue;
                }
                let fast = star(&Poly::from(word_from_index(a)), &Poly::from(word_from_index(b))).unwrap();
                assert_eq!(fast, stuffle_oracle(a, b), "({a}) * ({b})");
            }
        }
    }

    #[test]
    fn a_elements() {
        assert_eq!(a_element(0), Poly::one());
        assert_eq!(a_element(1), p("y"));
        assert_eq!(a_element(2), p("xy + yy"));
        // z·A_0 = x + y = A_1 + x
        assert_eq!(Poly::z() * a_element(0), a_element(1) + p("x"));
        for j in 1..8 {
            assert_eq!(Poly::z() * a_element(j), a_element(j + 1));
            assert!(a_element(j).is_homogeneous_of(j));
        }
    }

    #[test]
    fn d_is_bijective_on_hy() {
        for d in 1..=7 {
            for w in enumerate_words(d, Space::H1) {
                let image = apply_d(&Poly::from(&w)).unwrap();
                assert!(image.is_homogeneous_of(d));
                assert!(image.words().all(|u| u.ends_with_y()));
                assert_eq!(apply_d_inverse(&image).unwrap(), Poly::from(&w));
            }
        }
    }

    fn arb_word(max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(prop::bool::ANY, 0..=max_len).prop_map(|bits| {
            Word::from_letters(bits.into_iter().map(|b| if b { Letter::Y } else { Letter::X }).collect())
        })
    }

    fn arb_poly(max_len: usize) -> impl Strategy<Value = Poly> {
        prop::collection::vec((arb_word(max_len), -5i64..=5), 0..5)
            .prop_map(|ts| ts.into_iter().map(|(w, c)| (w, rat(c))).collect())
    }

    /// A word of `Hy` with degree in `1..=max_len`.
    fn arb_hy_word(max_len: usize) -> impl Strategy<Value = Word> {
        arb_word(max_len - 1).prop_map(|w| w.concat(&Word::y()))
    }

    fn arb_h1_word(max_len: usize) -> impl Strategy<Value = Word> {
        prop_oneof![Just(Word::unit()), arb_hy_word(max_len)]
    }

    proptest! {
        #[test]
        fn phi_is_an_involution(q in arb_poly(7)) {
            let twice = apply_automorphism(Automorphism::Phi, &apply_automorphism(Automorphism::Phi, &q));
            prop_assert_eq!(twice, q);
        }

        #[test]
        fn gamma_pair_is_inverse(q in arb_poly(7)) {
            let g = apply_automorphism(Automorphism::Gamma, &q);
            prop_assert_eq!(apply_automorphism(Automorphism::GammaInv, &g), q.clone());
            let gi = apply_automorphism(Automorphism::GammaInv, &q);
            prop_assert_eq!(apply_automorphism(Automorphism::Gamma, &gi), q);
        }

        #[test]
        fn phi_d_equals_minus_d_alpha_tilde(w in arb_hy_word(8)) {
            let w = Poly::from(w);
            let lhs = apply_automorphism(Automorphism::Phi, &apply_d(&w).unwrap());
            let rhs = -apply_d(&apply_alpha_tilde(&w).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn strip_undoes_left_mul(q in arb_poly(6)) {
            prop_assert_eq!(strip_left_x(&left_mul_x(&q)).unwrap(), q);
        }

        #[test]
        fn harmonic_products_commute_and_associate(
            a in arb_h1_word(3), b in arb_h1_word(3), c in arb_h1_word(3)
        ) {
            let (a, b, c) = (Poly::from(a), Poly::from(b), Poly::from(c));
            for kind in [Harmonic::Star, Harmonic::StarBar] {
                prop_assert_eq!(harmonic(kind, &a, &b).unwrap(), harmonic(kind, &b, &a).unwrap());
                let left = harmonic(kind, &harmonic(kind, &a, &b).unwrap(), &c).unwrap();
                let right = harmonic(kind, &a, &harmonic(kind, &b, &c).unwrap()).unwrap();
                prop_assert_eq!(left, right);
            }
        }

        #[test]
        fn harmonic_products_add_weights(a in arb_hy_word(5), b in arb_hy_word(5)) {
            let d = a.degree() + b.degree();
            let (a, b) = (Poly::from(a), Poly::from(b));
            prop_assert!(star(&a, &b).unwrap().is_homogeneous_of(d));
            prop_assert!(star_bar(&a, &b).unwrap().is_homogeneous_of(d));
        }

        #[test]
        fn d_intertwines_star_bar_and_star(u in arb_h1_word(4), v in arb_h1_word(3)) {
            let (u, v) = (Poly::from(u), Poly::from(v));
            let lhs = apply_d(&star_bar(&u, &v).unwrap()).unwrap();
            let rhs = star(&apply_d(&u).unwrap(), &apply_d(&v).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn z_head_recursion(w in arb_hy_word(4), tail in arb_h1_word(3), q in 1u32..=4) {
            let z = Poly::z();
            let w = Poly::from(w);
            let zq_tail = z_poly(q) * Poly::from(tail.clone());
            let zw = &z * &w;
            let lhs = star(&zw, &zq_tail).unwrap();
            let rhs = &z * &star(&w, &zq_tail).unwrap() + z_poly(q) * star(&zw, &Poly::from(tail)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
