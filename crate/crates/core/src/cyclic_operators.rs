//! The operators `ρₙ = Mₙ𝒞ₙ`, `ρ̄ₙ = Mₙ𝒞̄ₙ` and `∂ₙ = Mₙ𝒟ₙ`, and the
//! Hoffman–Ohno cyclic derivatives.
//!
//! Two evaluation routes exist for each operator. The tensor route builds
//! `𝒞ₙ(w)` in `H^⊗(n+1)` letter by letter from the twisted Leibniz rule and
//! multiplies out; it is slow and serves as the reference. The closed forms
//! ([`rho`], [`rho_bar`], [`partial`]) expand the same sum directly:
//!
//! ```text
//! ρₙ(u_1..u_l)  = Σ_j sgn(u_j) x u_{j+1}..u_l z^(n-1) u_1..u_{j-1} y
//! ρ̄ₙ(u_1..u_l) = Σ_j sgn(u_j) x γ⁻¹(u_{j+1}..u_l) y^(n-1) γ⁻¹(u_1..u_{j-1}) y
//! ∂ₙ(u_1..u_l)  = Σ_j sgn(u_j) u_1..u_{j-1} x z^(n-1) y u_{j+1}..u_l
//! ```
//!
//! with `sgn(x) = 1`, `sgn(y) = -1`, `z = x + y`. Only the `n = 1` case of
//! `ρₙ` is classical; the others are derived here and are validated against
//! the tensor route in the tests.

use std::collections::btree_map::{BTreeMap, Entry};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::free_algebra::{rat, Letter, Poly, Rational, Word};
use crate::zeta_maps::Automorphism;

/// An element of `H^⊗(n+1)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Tensor {
    rank: usize,
    terms: BTreeMap<Vec<Word>, Rational>,
}

impl Tensor {
    pub fn zero(rank: usize) -> Self {
        assert!(rank >= 2, "tensor rank must be at least 2");
        Tensor {
            rank,
            terms: BTreeMap::new(),
        }
    }

    /// The expanded tensor product `p_1 ⊗ ... ⊗ p_r`.
    pub fn pure(slots: &[Poly]) -> Self {
        let mut acc: Vec<(Vec<Word>, Rational)> = vec![(Vec::new(), Rational::one())];
        for slot in slots {
            let mut next = Vec::with_capacity(acc.len() * slot.len());
            for (prefix, c) in &acc {
                for (w, a) in slot.terms() {
                    let mut v = prefix.clone();
                    v.push(w.clone());
                    next.push((v, c * a));
                }
            }
            acc = next;
        }
        let mut t = Tensor::zero(slots.len());
        for (slots, c) in acc {
            t.add_term(slots, c);
        }
        t
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Word], &Rational)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn add_term(&mut self, slots: Vec<Word>, c: Rational) {
        assert_eq!(slots.len(), self.rank, "tensor slot count mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(slots) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Tensor) {
        assert_eq!(self.rank, other.rank);
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &Rational) -> Tensor {
        let mut t = Tensor::zero(self.rank);
        for (k, a) in &self.terms {
            t.add_term(k.clone(), a * c);
        }
        t
    }

    /// Multiplies slot `slot` by `p`, on the left (`p·w`) or on the right (`w·p`).
    fn act_on_slot(&self, p: &Poly, slot: usize, from_left: bool) -> Tensor {
        let mut t = Tensor::zero(self.rank);
        for (k, c) in &self.terms {
            for (w, a) in p.terms() {
                let mut slots = k.clone();
                slots[slot] = if from_left {
                    w.concat(&k[slot])
                } else {
                    k[slot].concat(w)
                };
                t.add_term(slots, c * a);
            }
        }
        t
    }
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*")?;
            for (j, w) in k.iter().enumerate() {
                if j > 0 {
                    f.write_str("⊗")?;
                }
                write!(f, "{w}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor[{}]({self})", self.rank)
    }
}

/// `a ⋄ (w_1⊗...⊗w_{n+1}) = w_1⊗...⊗w_n⊗a w_{n+1}`
pub fn diamond_left(a: &Poly, t: &Tensor) -> Tensor {
    t.act_on_slot(a, t.rank - 1, true)
}

/// `(w_1⊗...⊗w_{n+1}) ⋄ b = w_1 b⊗w_2⊗...⊗w_{n+1}`
pub fn diamond_right(t: &Tensor, b: &Poly) -> Tensor {
    t.act_on_slot(b, 0, false)
}

/// Outer action `a · (w_1⊗...) = a w_1⊗...`
pub fn outer_left(a: &Poly, t: &Tensor) -> Tensor {
    t.act_on_slot(a, 0, true)
}

/// Outer action `(...⊗w_{n+1}) · b = ...⊗w_{n+1} b`
pub fn outer_right(t: &Tensor, b: &Poly) -> Tensor {
    t.act_on_slot(b, t.rank - 1, false)
}

/// `Mₙ`: concatenates the slots.
pub fn multiply_out(t: &Tensor) -> Poly {
    let mut out = Poly::zero();
    for (k, c) in &t.terms {
        let w = k.iter().fold(Word::unit(), |acc, s| acc.concat(s));
        out.add_term(w, c.clone());
    }
    out
}

fn signed(l: Letter) -> Rational {
    rat(i64::from(l.sign()))
}

/// `x ⊗ z^⊗(n-1) ⊗ y`, the letter value shared by `𝒞ₙ` and `𝒟ₙ`.
fn cn_letter_tensor(n: usize) -> Tensor {
    let mut slots = Vec::with_capacity(n + 1);
    slots.push(Poly::from(Word::x()));
    slots.extend(std::iter::repeat_n(Poly::z(), n - 1));
    slots.push(Poly::from(Word::y()));
    Tensor::pure(&slots)
}

/// `𝒞ₙ(w)` via `𝒞ₙ(u w') = 𝒞ₙ(u) ⋄ w' + u ⋄ 𝒞ₙ(w')`, split at the leftmost letter.
pub fn c_n(n: usize, p: &Poly) -> Tensor {
    assert!(n >= 1, "c_n needs n >= 1");
    let letter = cn_letter_tensor(n);
    let mut out = Tensor::zero(n + 1);
    for (w, c) in p.terms() {
        out.add_assign(&c_n_word(&letter, w.letters()).scale(c));
    }
    out
}

fn c_n_word(letter: &Tensor, w: &[Letter]) -> Tensor {
    match w {
        [] => Tensor::zero(letter.rank),
        [u] => letter.scale(&signed(*u)),
        [u, rest @ ..] => {
            let rest_poly = Poly::from(Word::from_letters(rest.to_vec()));
            let mut t = diamond_right(&letter.scale(&signed(*u)), &rest_poly);
            t.add_assign(&diamond_left(&Poly::from(Word::letter(*u)), &c_n_word(letter, rest)));
            t
        }
    }
}

/// `𝒞̄ₙ(w)` via `𝒞̄ₙ(u w') = 𝒞̄ₙ(u) ⋄ γ⁻¹(w') + γ⁻¹(u) ⋄ 𝒞̄ₙ(w')`.
pub fn c_bar_n(n: usize, p: &Poly) -> Tensor {
    assert!(n >= 1, "c_bar_n needs n >= 1");
    let mut slots = vec![Poly::from(Word::x())];
    slots.extend(std::iter::repeat_n(Poly::from(Word::y()), n));
    let letter = Tensor::pure(&slots);
    let mut out = Tensor::zero(n + 1);
    for (w, c) in p.terms() {
        out.add_assign(&c_bar_n_word(&letter, w.letters()).scale(c));
    }
    out
}

fn c_bar_n_word(letter: &Tensor, w: &[Letter]) -> Tensor {
    let gi = Automorphism::GammaInv;
    match w {
        [] => Tensor::zero(letter.rank),
        [u] => letter.scale(&signed(*u)),
        [u, rest @ ..] => {
            let rest_image = gi.apply_word(&Word::from_letters(rest.to_vec()));
            let mut t = diamond_right(&letter.scale(&signed(*u)), &rest_image);
            t.add_assign(&diamond_left(&gi.apply_word(&Word::letter(*u)), &c_bar_n_word(letter, rest)));
            t
        }
    }
}

/// `𝒟ₙ(w)` via `𝒟ₙ(u w') = 𝒟ₙ(u) · w' + u · 𝒟ₙ(w')` (outer actions).
pub fn d_n(n: usize, p: &Poly) -> Tensor {
    assert!(n >= 1, "d_n needs n >= 1");
    let letter = cn_letter_tensor(n);
    let mut out = Tensor::zero(n + 1);
    for (w, c) in p.terms() {
        out.add_assign(&d_n_word(&letter, w.letters()).scale(c));
    }
    out
}

fn d_n_word(letter: &Tensor, w: &[Letter]) -> Tensor {
    match w {
        [] => Tensor::zero(letter.rank),
        [u] => letter.scale(&signed(*u)),
        [u, rest @ ..] => {
            let rest_poly = Poly::from(Word::from_letters(rest.to_vec()));
            let mut t = outer_right(&letter.scale(&signed(*u)), &rest_poly);
            t.add_assign(&outer_left(&Poly::from(Word::letter(*u)), &d_n_word(letter, rest)));
            t
        }
    }
}

/// `ρₙ` by the closed form.
pub fn rho(n: usize, p: &Poly) -> Poly {
    assert!(n >= 1, "rho needs n >= 1");
    let middle = Poly::z().pow(n - 1);
    let mut out = Poly::zero();
    for (w, c) in p.terms() {
        let l = w.degree();
        for j in 0..l {
            let sign = signed(w.letters()[j]) * c;
            let left = Word::x().concat(&w.slice(j + 1..l));
            let right = w.slice(0..j).concat(&Word::y());
            for (m, a) in middle.terms() {
                out.add_term(left.concat(m).concat(&right), &sign * a);
            }
        }
    }
    out
}

/// `ρ̄ₙ` by the closed form.
pub fn rho_bar(n: usize, p: &Poly) -> Poly {
    assert!(n >= 1, "rho_bar needs n >= 1");
    let gi = Automorphism::GammaInv;
    let middle = Word::y_power(n - 1);
    let mut out = Poly::zero();
    for (w, c) in p.terms() {
        let l = w.degree();
        for j in 0..l {
            let sign = signed(w.letters()[j]) * c;
            let after = gi.apply_word(&w.slice(j + 1..l)).left_mul_word(&Word::x());
            let before = gi.apply_word(&w.slice(0..j)).right_mul_word(&Word::y());
            let term = after.right_mul_word(&middle).concat(&before);
            out.add_scaled(&term, &sign);
        }
    }
    out
}

/// `∂ₙ` by the closed form.
pub fn partial(n: usize, p: &Poly) -> Poly {
    assert!(n >= 1, "partial needs n >= 1");
    let core = Poly::z().pow(n - 1).left_mul_word(&Word::x()).right_mul_word(&Word::y());
    let mut out = Poly::zero();
    for (w, c) in p.terms() {
        let l = w.degree();
        for j in 0..l {
            let sign = signed(w.letters()[j]) * c;
            let term = core.left_mul_word(&w.slice(0..j)).right_mul_word(&w.slice(j + 1..l));
            out.add_scaled(&term, &sign);
        }
    }
    out
}

/// `Mₙ𝒞ₙ` through the tensor route.
pub fn rho_via_tensor(n: usize, p: &Poly) -> Poly {
    multiply_out(&c_n(n, p))
}

pub fn rho_bar_via_tensor(n: usize, p: &Poly) -> Poly {
    multiply_out(&c_bar_n(n, p))
}

pub fn partial_via_tensor(n: usize, p: &Poly) -> Poly {
    multiply_out(&d_n(n, p))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OperatorKind {
    Rho,
    RhoBar,
    Partial,
}

impl OperatorKind {
    pub fn apply(self, n: usize, p: &Poly) -> Poly {
        match self {
            OperatorKind::Rho => rho(n, p),
            OperatorKind::RhoBar => rho_bar(n, p),
            OperatorKind::Partial => partial(n, p),
        }
    }

    pub fn apply_via_tensor(self, n: usize, p: &Poly) -> Poly {
        match self {
            OperatorKind::Rho => rho_via_tensor(n, p),
            OperatorKind::RhoBar => rho_bar_via_tensor(n, p),
            OperatorKind::Partial => partial_via_tensor(n, p),
        }
    }
}

/// Which of the two Hoffman–Ohno cyclic derivatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CyclicVariant {
    /// `C_x = 0`, `C_y = L_x R_y`
    C,
    /// `C̄_x = L_x R_y`, `C̄_y = 0`
    CBar,
}

impl FromStr for CyclicVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "c" => Ok(CyclicVariant::C),
            "cbar" | "c_bar" | "c-bar" => Ok(CyclicVariant::CBar),
            _ => Err(Error::Parse(format!("unknown cyclic derivative variant `{s}`"))),
        }
    }
}

fn cyclic_letter(variant: CyclicVariant, u: Letter, big_w: &Poly) -> Poly {
    let active = match variant {
        CyclicVariant::C => Letter::Y,
        CyclicVariant::CBar => Letter::X,
    };
    if u == active {
        big_w.left_mul_word(&Word::x()).right_mul_word(&Word::y())
    } else {
        Poly::zero()
    }
}

/// `φ_w(W)` using `φ_{w_1 w_2}(W) = φ_{w_1}(w_2 W) + φ_{w_2}(W w_1)` with `w_1`
/// the leftmost letter.
pub fn cyclic_derivative(variant: CyclicVariant, w: &Word, big_w: &Poly) -> Poly {
    match w.letters() {
        [] => Poly::zero(),
        [u] => cyclic_letter(variant, *u, big_w),
        [u, rest @ ..] => {
            let rest = Word::from_letters(rest.to_vec());
            let first = Word::letter(*u);
            let mut out = cyclic_letter(variant, *u, &big_w.left_mul_word(&rest));
            out += cyclic_derivative(variant, &rest, &big_w.right_mul_word(&first));
            out
        }
    }
}

/// Same as [`cyclic_derivative`] but with the outermost split taken after `split`
/// letters; used to test that the value does not depend on the split.
pub fn cyclic_derivative_split(variant: CyclicVariant, w: &Word, big_w: &Poly, split: usize) -> Poly {
    let (w1, w2) = w.split_at(split);
    let mut out = cyclic_derivative(variant, &w1, &big_w.left_mul_word(&w2));
    out += cyclic_derivative(variant, &w2, &big_w.right_mul_word(&w1));
    out
}

/// `(C̄_w - C_w)(1)`
pub fn hoffman_ohno(w: &Word) -> Poly {
    cyclic_derivative(CyclicVariant::CBar, w, &Poly::one()) - cyclic_derivative(CyclicVariant::C, w, &Poly::one())
}
