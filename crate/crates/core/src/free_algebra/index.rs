use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::word::{Letter, Word};
use crate::error::Error;

/// A composition `(k_1, ..., k_l)` of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Index(Vec<u32>);

impl Index {
    /// Panics if any part is zero.
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(parts.iter().all(|&k| k >= 1), "index parts must be >= 1");
        Index(parts)
    }

    pub fn empty() -> Self {
        Index(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_admissible(&self) -> bool {
        self.0.first().is_none_or(|&k| k >= 2)
    }

    /// All compositions of `weight` in lexicographic order of parts.
    pub fn compositions(weight: u32) -> Vec<Index> {
        if weight == 0 {
            return vec![Index::empty()];
        }
        let mut out = Vec::with_capacity(1 << (weight - 1).min(30));
        let mut cur = Vec::new();
        compose(weight, &mut cur, &mut out);
        out
    }

    /// Every index of weight `1..=max_weight`.
    pub fn up_to_weight(max_weight: u32) -> Vec<Index> {
        (1..=max_weight).flat_map(Index::compositions).collect()
    }
}

fn compose(rest: u32, cur: &mut Vec<u32>, out: &mut Vec<Index>) {
    if rest == 0 {
        out.push(Index(cur.clone()));
        return;
    }
    for k in 1..=rest {
        cur.push(k);
        compose(rest - k, cur, out);
        cur.pop();
    }
}

impl From<Vec<u32>> for Index {
    fn from(parts: Vec<u32>) -> Self {
        Index::new(parts)
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

impl FromStr for Index {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Index::empty());
        }
        s.split(',')
            .map(|part| match part.trim().parse::<u32>() {
                Ok(k) if k >= 1 => Ok(k),
                _ => Err(Error::Parse(format!(
                    "invalid index part `{part}` in `{s}` (expected positive integers separated by commas)"
                ))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Index)
    }
}

/// `(k_1, ..., k_l) -> z_{k_1} ... z_{k_l}` with `z_k = x^(k-1) y`.
pub fn word_from_index(idx: &Index) -> Word {
    let mut letters = Vec::with_capacity(idx.weight() as usize);
    for &k in idx.parts() {
        letters.extend(std::iter::repeat_n(Letter::X, k as usize - 1));
        letters.push(Letter::Y);
    }
    Word::from_letters(letters)
}

/// Inverse of [`word_from_index`] on monomials of `H^1`.
pub fn index_from_word(w: &Word) -> Result<Index, Error> {
    if !w.is_unit() && !w.ends_with_y() {
        return Err(Error::NotInH1(w.clone()));
    }
    let mut parts = Vec::with_capacity(w.y_degree());
    let mut run = 0u32;
    for &l in w.letters() {
        match l {
            Letter::X => run += 1,
            Letter::Y => {
                parts.push(run + 1);
                run = 0;
            }
        }
    }
    Ok(Index(parts))
}
