use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// One of the two indeterminates. `X < Y` in every ordering used by the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    X,
    Y,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::X => 'x',
            Letter::Y => 'y',
        }
    }

    /// `+1` for `x`, `-1` for `y`.
    pub fn sign(self) -> i32 {
        match self {
            Letter::X => 1,
            Letter::Y => -1,
        }
    }
}

/// A monomial of `Q<x,y>`. The empty word is the unit `1`.
///
/// Words are ordered by degree first, then lexicographically with `x < y`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn x() -> Self {
        Word::letter(Letter::X)
    }

    pub fn y() -> Self {
        Word::letter(Letter::Y)
    }

    pub fn x_power(k: usize) -> Self {
        Word(vec![Letter::X; k])
    }

    pub fn y_power(k: usize) -> Self {
        Word(vec![Letter::Y; k])
    }

    /// `z_k = x^(k-1) y`.
    pub fn z(k: u32) -> Self {
        assert!(k >= 1, "z_k needs k >= 1");
        let mut v = vec![Letter::X; k as usize - 1];
        v.push(Letter::Y);
        Word(v)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn y_degree(&self) -> usize {
        self.0.iter().filter(|&&l| l == Letter::Y).count()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn starts_with_x(&self) -> bool {
        self.first() == Some(Letter::X)
    }

    pub fn ends_with_y(&self) -> bool {
        self.last() == Some(Letter::Y)
    }

    pub fn is_power_of(&self, l: Letter) -> bool {
        !self.is_unit() && self.0.iter().all(|&c| c == l)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Subword `letters[range]`.
    pub fn slice(&self, range: std::ops::Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }

    pub fn split_at(&self, mid: usize) -> (Word, Word) {
        let (a, b) = self.0.split_at(mid);
        (Word(a.to_vec()), Word(b.to_vec()))
    }

    /// Cyclic left rotation by `k` positions: `u_1..u_l -> u_{k+1}..u_l u_1..u_k`.
    pub fn rotate(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        let mut v = Vec::with_capacity(self.0.len());
        v.extend_from_slice(&self.0[k..]);
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    /// Drops the leading letter if it is `x`.
    pub fn strip_x(&self) -> Option<Word> {
        if self.starts_with_x() {
            Some(Word(self.0[1..].to_vec()))
        } else {
            None
        }
    }

    /// Splits `wy` into `w`; `None` unless the word ends in `y`.
    pub fn strip_trailing_y(&self) -> Option<Word> {
        if self.ends_with_y() {
            Some(Word(self.0[..self.0.len() - 1].to_vec()))
        } else {
            None
        }
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "1" {
            return Ok(Word::unit());
        }
        if s.is_empty() {
            return Err(Error::Parse("empty word (use `1` for the unit)".into()));
        }
        s.chars()
            .map(|c| match c {
                'x' => Ok(Letter::X),
                'y' => Ok(Letter::Y),
                other => Err(Error::Parse(format!(
                    "invalid letter `{other}` in word `{s}` (expected [xy]+ or 1)"
                ))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
