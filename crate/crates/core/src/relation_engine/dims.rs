use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::linalg::{exact_rank, LinearSystem, SpanIndex};
use crate::cyclic_operators::rho;
use crate::error::{Error, Result};
use crate::free_algebra::{count_cyclic_classes, enumerate_words, Poly, Space};

/// `ρₙ(w)` for every `w ∈ Ȟ¹` of degree `d`, labelled by `w`.
pub fn csf_generators(n: usize, d: usize) -> Vec<(String, Poly)> {
    enumerate_words(d, Space::CheckH1)
        .into_iter()
        .map(|w| {
            let image = rho(n, &Poly::from(&w));
            (format!("rho{n}({w})"), image)
        })
        .collect()
}

/// `dim CSF_d^n`, the rank of the `ρₙ`-images of degree-`d` words of `Ȟ¹`.
pub fn csf_dimension(n: usize, d: usize) -> Result<usize> {
    exact_rank(&LinearSystem::new(d + n, csf_generators(n, d))?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimEntry {
    pub weight: usize,
    pub n: usize,
    pub dim: usize,
}

/// Dimensions keyed by `(weight, n)` with `weight = d + n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DimTable {
    pub entries: BTreeMap<(usize, usize), usize>,
}

#[derive(Serialize, Deserialize)]
struct DimTableJson {
    entries: Vec<DimEntry>,
}

impl DimTable {
    pub fn get(&self, weight: usize, n: usize) -> Option<usize> {
        self.entries.get(&(weight, n)).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = DimEntry> + '_ {
        self.entries.iter().map(|(&(weight, n), &dim)| DimEntry { weight, n, dim })
    }

    pub fn max_weight(&self) -> Option<usize> {
        self.entries.keys().map(|&(w, _)| w).max()
    }

    /// Rows `n = 1, 2, …`, columns by weight; entries below `weight = n + 2` stay blank.
    pub fn to_text(&self) -> String {
        let (Some(max_w), Some(min_w)) = (self.max_weight(), self.entries.keys().map(|&(w, _)| w).min()) else {
            return String::new();
        };
        let max_n = self.entries.keys().map(|&(_, n)| n).max().unwrap_or(0);
        let width = self.entries.values().map(|d| d.to_string().len()).max().unwrap_or(1).max(2) + 1;
        let mut out = String::from("weight d+n");
        for w in min_w..=max_w {
            let _ = write!(out, "{w:>width$}");
        }
        out.push('\n');
        for n in 1..=max_n {
            let mut line = format!("{:<10}", format!("n={n}"));
            for w in min_w..=max_w {
                match self.get(w, n) {
                    Some(d) => {
                        let _ = write!(line, "{d:>width$}");
                    }
                    None => line.push_str(&" ".repeat(width)),
                }
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let json = DimTableJson {
            entries: self.iter().collect(),
        };
        serde_json::to_string(&json).expect("dimension table serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let json: DimTableJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(DimTable {
            entries: json.entries.into_iter().map(|e| ((e.weight, e.n), e.dim)).collect(),
        })
    }
}

/// All `dim CSF_d^n` with `3 <= d + n <= max_weight` and `d >= 2`.
/// Entries are computed in parallel; the result does not depend on scheduling.
pub fn dims_table(max_weight: usize) -> Result<DimTable> {
    let mut cells: Vec<(usize, usize)> = (3..=max_weight)
        .flat_map(|w| (1..=w - 2).map(move |n| (w, n)))
        .collect();
    // largest systems first so the pool stays busy
    cells.sort_by_key(|&(w, n)| std::cmp::Reverse((w - n, n)));
    let dims: Vec<((usize, usize), usize)> = cells
        .par_iter()
        .map(|&(w, n)| csf_dimension(n, w - n).map(|dim| ((w, n), dim)))
        .collect::<Result<_>>()?;
    Ok(DimTable {
        entries: dims.into_iter().collect(),
    })
}

/// `-2 + (1/d) Σ_{m|d} φ(d/m) 2^m`, the number of necklaces of length `d` other
/// than `x^d` and `y^d`.
pub fn totient_dimension(d: usize) -> i64 {
    count_cyclic_classes(d as u32) as i64 - 2
}

/// Every `ρₙ₊₁(w)`, `w ∈ Ȟ¹_(d)`, lies in the span of `ρₙ(Ȟ¹_(d+1))`.
pub fn prop5_check(n: usize, d: usize) -> Result<bool> {
    let span = SpanIndex::new(LinearSystem::new(d + n + 1, csf_generators(n, d + 1))?);
    let targets: Vec<Poly> = csf_generators(n + 1, d).into_iter().map(|(_, p)| p).collect();
    span.contains_all(&targets)
}

/// `(rank of all ρₙ-images of output weight `weight`, rank of the n = 1 images)`.
pub fn saturation_ranks(weight: usize) -> Result<(usize, usize)> {
    let mut all = Vec::new();
    for n in 1..weight.saturating_sub(1) {
        all.extend(csf_generators(n, weight - n));
    }
    let union = exact_rank(&LinearSystem::new(weight, all)?)?;
    let first = csf_dimension(1, weight - 1)?;
    Ok((union, first))
}
