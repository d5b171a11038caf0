//! Words, polynomials and indices over the free algebra `Q<x,y>`, together with
//! graded enumeration of the subspaces `H^1`, `H^0`, `Ȟ^1`, `Ȟ` and rotation classes.

mod index;
mod poly;
mod word;

pub use index::{index_from_word, word_from_index, Index};
pub use poly::{concat_product, parse_rational, rat, ratio, Poly, Rational};
pub use word::{Letter, Word};

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Membership of a single word in the distinguished subspaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubspaceFlags {
    /// `Q + Hy`
    pub in_h1: bool,
    /// `Q + xHy`
    pub in_h0: bool,
    /// Words of `H^1` other than powers of `y`.
    pub in_check_h1: bool,
    /// Words other than powers of `x` and powers of `y`.
    pub in_check_h: bool,
}

pub fn classify(w: &Word) -> SubspaceFlags {
    let in_h1 = w.is_unit() || w.ends_with_y();
    let in_h0 = w.is_unit() || (w.starts_with_x() && w.ends_with_y());
    let y_pow = w.is_power_of(Letter::Y);
    let x_pow = w.is_power_of(Letter::X);
    SubspaceFlags {
        in_h1,
        in_h0,
        in_check_h1: in_h1 && !w.is_unit() && !y_pow,
        in_check_h: !w.is_unit() && !x_pow && !y_pow,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Space {
    H,
    H1,
    H0,
    CheckH1,
    CheckH,
}

impl Space {
    pub fn contains(self, w: &Word) -> bool {
        let f = classify(w);
        match self {
            Space::H => true,
            Space::H1 => f.in_h1,
            Space::H0 => f.in_h0,
            Space::CheckH1 => f.in_check_h1,
            Space::CheckH => f.in_check_h,
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Space::H => "H",
            Space::H1 => "H1",
            Space::H0 => "H0",
            Space::CheckH1 => "CHECK_H1",
            Space::CheckH => "CHECK_H",
        })
    }
}

impl FromStr for Space {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().replace('-', "_").as_str() {
            "H" => Ok(Space::H),
            "H1" => Ok(Space::H1),
            "H0" => Ok(Space::H0),
            "CHECK_H1" => Ok(Space::CheckH1),
            "CHECK_H" => Ok(Space::CheckH),
            _ => Err(Error::Parse(format!("unknown space `{s}`"))),
        }
    }
}

/// All degree-`d` words of `space`, in lexicographic order.
pub fn enumerate_words(d: usize, space: Space) -> Vec<Word> {
    assert!(d < 40, "enumerate_words: degree {d} is out of range");
    (0u64..1 << d)
        .map(|bits| {
            Word::from_letters(
                (0..d)
                    .map(|i| {
                        if bits >> (d - 1 - i) & 1 == 0 {
                            Letter::X
                        } else {
                            Letter::Y
                        }
                    })
                    .collect(),
            )
        })
        .filter(|w| space.contains(w))
        .collect()
}

/// Least rotation under `x < y` (Booth's algorithm).
pub fn cyclic_canonical(w: &Word) -> Word {
    let s = w.letters();
    let n = s.len();
    if n == 0 {
        return w.clone();
    }
    let at = |i: usize| s[i % n];
    let mut fail = vec![usize::MAX; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let c = at(j);
        let mut i = fail[j - k - 1];
        while i != usize::MAX && c != at(k + i + 1) {
            if c < at(k + i + 1) {
                k = j - i - 1;
            }
            i = fail[i];
        }
        if i == usize::MAX && c != at(k) {
            if c < at(k) {
                k = j;
            }
            fail[j - k] = usize::MAX;
        } else {
            fail[j - k] = if i == usize::MAX { 0 } else { i + 1 };
        }
    }
    w.rotate(k)
}

pub fn euler_totient(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Number of rotation classes of degree-`d` binary words, `(1/d) Σ_{m|d} φ(d/m) 2^m`.
pub fn count_cyclic_classes(d: u32) -> u64 {
    assert!((1..=62).contains(&d), "count_cyclic_classes needs 1 <= d <= 62");
    let d64 = u64::from(d);
    let total: u64 = (1..=d64)
        .filter(|m| d64 % m == 0)
        .map(|m| euler_totient(d64 / m) << m)
        .sum();
    total / d64
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn flags(a: bool, b: bool, c: bool, d: bool) -> SubspaceFlags {
        SubspaceFlags {
            in_h1: a,
            in_h0: b,
            in_check_h1: c,
            in_check_h: d,
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&w("xy")), flags(true, true, true, true));
        assert_eq!(classify(&w("yy")), flags(true, false, false, false));
        assert_eq!(classify(&w("xx")), flags(false, false, false, false));
        assert_eq!(classify(&Word::unit()), flags(true, true, false, false));
        assert_eq!(classify(&w("yxy")), flags(true, false, true, true));
    }

    #[test]
    fn enumerate_examples() {
        let shown = |v: Vec<Word>| v.iter().map(|w| w.to_string()).collect::<Vec<_>>();
        assert_eq!(shown(enumerate_words(3, Space::CheckH1)), ["xxy", "xyy", "yxy"]);
        assert!(enumerate_words(1, Space::CheckH1).is_empty());
        assert_eq!(shown(enumerate_words(2, Space::H1)), ["xy", "yy"]);
        assert_eq!(enumerate_words(0, Space::H), vec![Word::unit()]);
    }

    #[test]
    fn enumerate_sizes() {
        for d in 2..=12usize {
            assert_eq!(enumerate_words(d, Space::H).len(), 1 << d);
            assert_eq!(enumerate_words(d, Space::H1).len(), 1 << (d - 1));
            assert_eq!(enumerate_words(d, Space::CheckH1).len(), (1 << (d - 1)) - 1);
            assert_eq!(enumerate_words(d, Space::H0).len(), 1 << (d - 2));
        }
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(cyclic_canonical(&w("yx")), w("xy"));
        assert_eq!(cyclic_canonical(&w("yxy")), w("xyy"));
        assert_eq!(cyclic_canonical(&w("xyxy")), w("xyxy"));
        assert_eq!(cyclic_canonical(&Word::unit()), Word::unit());
    }

    fn brute_least_rotation(w: &Word) -> Word {
        (0..w.degree().max(1)).map(|k| w.rotate(k)).min_by(|a, b| a.letters().cmp(b.letters())).unwrap()
    }

    #[test]
    fn canonical_matches_brute_force() {
        for d in 1..=10 {
            for word in enumerate_words(d, Space::H) {
                assert_eq!(cyclic_canonical(&word), brute_least_rotation(&word), "{word}");
            }
        }
    }

    #[test]
    fn necklace_counts() {
        assert_eq!(count_cyclic_classes(1), 2);
        assert_eq!(count_cyclic_classes(2), 3);
        assert_eq!(count_cyclic_classes(3), 4);
        for d in 1..=14u32 {
            let classes: HashSet<Word> = enumerate_words(d as usize, Space::H)
                .iter()
                .map(cyclic_canonical)
                .collect();
            assert_eq!(count_cyclic_classes(d), classes.len() as u64, "d = {d}");
        }
    }

    #[test]
    fn totient_small() {
        let phi: Vec<u64> = (1..=12).map(euler_totient).collect();
        assert_eq!(phi, [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]);
    }
}
