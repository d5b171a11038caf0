use std::collections::btree_map::{self, BTreeMap, Entry};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::word::Word;
use crate::error::Error;

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A finite Q-linear combination of words. Zero coefficients are never stored,
/// and iteration follows the canonical monomial order of [`Word`].
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Word, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::from(Word::unit())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::term(c, Word::unit())
    }

    pub fn term(c: Rational, w: Word) -> Self {
        let mut p = Poly::zero();
        p.add_term(w, c);
        p
    }

    /// `x + y`
    pub fn z() -> Self {
        Poly::from(Word::x()) + Poly::from(Word::y())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> btree_map::Iter<'_, Word, Rational> {
        self.terms.iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &Poly, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (w, a) in other.terms() {
            self.add_term(w.clone(), a * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
        }
    }

    /// Applies `f` to every word and sums the images with the stored coefficients.
    pub fn map_words<F>(&self, mut f: F) -> Poly
    where
        F: FnMut(&Word) -> Poly,
    {
        let mut out = Poly::zero();
        for (w, c) in self.terms() {
            out.add_scaled(&f(w), c);
        }
        out
    }

    /// Fallible variant of [`Poly::map_words`].
    pub fn try_map_words<F>(&self, mut f: F) -> Result<Poly, Error>
    where
        F: FnMut(&Word) -> Result<Poly, Error>,
    {
        let mut out = Poly::zero();
        for (w, c) in self.terms() {
            out.add_scaled(&f(w)?, c);
        }
        Ok(out)
    }

    /// `Some(d)` when every word has degree `d`; the zero polynomial is homogeneous of every degree
    /// and reports `None`.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Word::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous_of(&self, d: usize) -> bool {
        self.terms.keys().all(|w| w.degree() == d)
    }

    /// Sum of absolute coefficients.
    pub fn l1_norm(&self) -> Rational {
        self.terms.values().map(|c| c.abs()).sum()
    }

    /// Concatenation product, extended bilinearly.
    pub fn concat(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (u, a) in self.terms() {
            for (v, b) in other.terms() {
                out.add_term(u.concat(v), a * b);
            }
        }
        out
    }

    pub fn left_mul_word(&self, w: &Word) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(u, c)| (w.concat(u), c.clone())).collect(),
        }
    }

    pub fn right_mul_word(&self, w: &Word) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(u, c)| (u.concat(w), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> Poly {
        (0..k).fold(Poly::one(), |acc, _| acc.concat(self))
    }
}

pub fn concat_product(p: &Poly, q: &Poly) -> Poly {
    p.concat(q)
}

impl From<Word> for Poly {
    fn from(w: Word) -> Self {
        Poly::term(Rational::one(), w)
    }
}

impl From<&Word> for Poly {
    fn from(w: &Word) -> Self {
        Poly::from(w.clone())
    }
}

impl FromIterator<(Word, Rational)> for Poly {
    fn from_iter<I: IntoIterator<Item = (Word, Rational)>>(iter: I) -> Self {
        let mut p = Poly::zero();
        for (w, c) in iter {
            p.add_term(w, c);
        }
        p
    }
}

impl<'a> IntoIterator for &'a Poly {
    type Item = (&'a Word, &'a Rational);
    type IntoIter = btree_map::Iter<'a, Word, Rational>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (w, c) in rhs.terms() {
            self.add_term(w.clone(), c.clone());
        }
    }
}

impl AddAssign for Poly {
    fn add_assign(&mut self, rhs: Poly) {
        for (w, c) in rhs.terms {
            self.add_term(w, c);
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (w, c) in rhs.terms() {
            self.add_term(w.clone(), -c);
        }
    }
}

impl SubAssign for Poly {
    fn sub_assign(&mut self, rhs: Poly) {
        for (w, c) in rhs.terms {
            self.add_term(w, -c);
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += rhs;
        self
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= rhs;
        self
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.into_iter().map(|(w, c)| (w, -c)).collect(),
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.clone().neg()
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        self.concat(&rhs)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.concat(rhs)
    }
}

impl fmt::Display for Poly {
    /// Canonical text form: `c1*w1 + c2*w2 - c3*w3`, coefficients always written.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write!(f, "{}*{}", c.abs(), w)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl FromStr for Poly {
    type Err = Error;

    /// Accepts the canonical form plus shorthand: bare words (`xy - yy`), bare
    /// coefficients (`3`), and `p/q` coefficients.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut out = Poly::zero();
        let bytes = compact.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut sign = 1i64;
            if pos == 0 || bytes[pos] == b'+' || bytes[pos] == b'-' {
                match bytes[pos] {
                    b'+' => pos += 1,
                    b'-' => {
                        sign = -1;
                        pos += 1;
                    }
                    _ => {}
                }
            }
            let end = compact[pos..]
                .find(['+', '-'])
                .map_or(compact.len(), |i| pos + i);
            let term = &compact[pos..end];
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in `{s}`")));
            }
            let (c, w) = parse_term(term)?;
            out.add_term(w, c * rat(sign));
            pos = end;
        }
        Ok(out)
    }
}

fn parse_term(term: &str) -> Result<(Rational, Word), Error> {
    if let Some((c, w)) = term.split_once('*') {
        return Ok((parse_rational(c)?, w.parse()?));
    }
    if term.chars().all(|c| c == 'x' || c == 'y') {
        return Ok((Rational::one(), term.parse()?));
    }
    Ok((parse_rational(term)?, Word::unit()))
}

pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}
