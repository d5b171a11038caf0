//! Brute-force model of the tuple sets behind the Key Proposition.
//!
//! A tuple in `U(k₁, …, k_l)` is an ordered set partition of the positions
//! `0..l`; each block is stored as a bitmask. Working with positions rather
//! than values keeps the parts symbolically distinct.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::free_algebra::{Index, Poly, Word};
use crate::zeta_maps::star;

type Tuple = Vec<u8>;

const MAX_DEPTH: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionReport {
    pub depth: usize,
    pub u_size: usize,
    pub i_sizes: Vec<usize>,
    /// Every quasi-shuffle of the singletons is a distinct tuple of `U`, and all of `U` arises.
    pub eq7_symbolic: bool,
    /// `Σ_{t∈U} W(t) = z_{k₁} ∗ ⋯ ∗ z_{k_l}` with the actual parts.
    pub eq7_concrete: bool,
    /// `U \ {(k₁+⋯+k_l)} = ∪ I_i`
    pub eq8: bool,
    /// Each `H(j, α)` expands to the tuples satisfying `I_r` for every `r`
    /// that is not the last position of its block.
    pub block_expansion: bool,
}

impl PartitionReport {
    pub fn holds(&self) -> bool {
        self.eq7_symbolic && self.eq7_concrete && self.eq8 && self.block_expansion
    }
}

fn ordered_partitions(remaining: u8, prefix: &mut Tuple, out: &mut Vec<Tuple>) {
    if remaining == 0 {
        out.push(prefix.clone());
        return;
    }
    let mut block = remaining;
    while block != 0 {
        prefix.push(block);
        ordered_partitions(remaining & !block, prefix, out);
        prefix.pop();
        block = (block - 1) & remaining;
    }
}

fn block_of(t: &Tuple, pos: usize) -> usize {
    t.iter().position(|b| b & (1 << pos) != 0).expect("every position is covered")
}

/// Position `i` sits in a block strictly left of the block of its cyclic successor.
fn in_i(t: &Tuple, i: usize, l: usize) -> bool {
    block_of(t, i) < block_of(t, (i + 1) % l)
}

fn quasi_shuffles(a: &[u8], b: &[u8]) -> Vec<Tuple> {
    if a.is_empty() || b.is_empty() {
        return vec![[a, b].concat()];
    }
    let prepend = |head: u8, tails: Vec<Tuple>| {
        tails.into_iter().map(move |mut t| {
            t.insert(0, head);
            t
        })
    };
    let mut out: Vec<Tuple> = prepend(a[0], quasi_shuffles(&a[1..], b)).collect();
    out.extend(prepend(b[0], quasi_shuffles(a, &b[1..])));
    out.extend(prepend(a[0] | b[0], quasi_shuffles(&a[1..], &b[1..])));
    out
}

fn shuffle_all(blocks: &[Tuple]) -> HashMap<Tuple, usize> {
    let mut acc: Vec<Tuple> = vec![Vec::new()];
    for b in blocks {
        acc = acc.iter().flat_map(|t| quasi_shuffles(t, b)).collect();
    }
    let mut counts = HashMap::new();
    for t in acc {
        *counts.entry(t).or_insert(0) += 1;
    }
    counts
}

fn is_exactly(counts: &HashMap<Tuple, usize>, set: &BTreeSet<Tuple>) -> bool {
    counts.len() == set.len() && counts.iter().all(|(t, &c)| c == 1 && set.contains(t))
}

fn tuple_word(t: &Tuple, ks: &[u32]) -> Word {
    t.iter().fold(Word::unit(), |w, &block| {
        let k: u32 = (0..ks.len()).filter(|i| block & (1 << i) != 0).map(|i| ks[i]).sum();
        w.concat(&Word::z(k))
    })
}

/// Materialises `U` and every `I_i` for `ks` and checks the counting identities.
pub fn partition_tuple_oracle(ks: &Index) -> Result<PartitionReport> {
    let l = ks.depth();
    if l == 0 || l > MAX_DEPTH {
        return Err(Error::PreconditionViolation(format!(
            "partition oracle needs 1 <= depth <= {MAX_DEPTH}, got {l}"
        )));
    }
    let full: u8 = ((1u16 << l) - 1) as u8;
    let mut u = Vec::new();
    ordered_partitions(full, &mut Vec::new(), &mut u);
    let u_set: BTreeSet<Tuple> = u.iter().cloned().collect();
    let i_sets: Vec<BTreeSet<Tuple>> = (0..l)
        .map(|i| u.iter().filter(|t| in_i(t, i, l)).cloned().collect())
        .collect();

    let singletons: Vec<Tuple> = (0..l).map(|i| vec![1u8 << i]).collect();
    let eq7_symbolic = is_exactly(&shuffle_all(&singletons), &u_set);

    let parts = ks.parts();
    let mut lhs = Poly::zero();
    for t in &u {
        lhs += Poly::from(tuple_word(t, parts));
    }
    let mut rhs = Poly::one();
    for &k in parts {
        rhs = star(&rhs, &Poly::from(Word::z(k)))?;
    }
    let eq7_concrete = lhs == rhs;

    let mut without_full = u_set.clone();
    without_full.remove(&vec![full]);
    let union: BTreeSet<Tuple> = i_sets.iter().flatten().cloned().collect();
    let eq8 = without_full == union;

    let mut block_expansion = true;
    for alpha in Index::compositions(l as u32) {
        for j in 0..l {
            let mut blocks = Vec::new();
            let mut block_ends = Vec::new();
            let mut start = j;
            for &a in alpha.parts() {
                let a = a as usize;
                blocks.push((start..start + a).map(|s| 1u8 << (s % l)).collect::<Tuple>());
                block_ends.push((start + a - 1) % l);
                start += a;
            }
            let constrained: BTreeSet<Tuple> = u
                .iter()
                .filter(|t| (0..l).filter(|r| !block_ends.contains(r)).all(|r| in_i(t, r, l)))
                .cloned()
                .collect();
            if !is_exactly(&shuffle_all(&blocks), &constrained) {
                block_expansion = false;
            }
        }
    }

    Ok(PartitionReport {
        depth: l,
        u_size: u.len(),
        i_sizes: i_sets.iter().map(BTreeSet::len).collect(),
        eq7_symbolic,
        eq7_concrete,
        eq8,
        block_expansion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_match_worked_examples() {
        let r = partition_tuple_oracle(&"1,2".parse().unwrap()).unwrap();
        assert_eq!(r.u_size, 3);
        assert_eq!(r.i_sizes, vec![1, 1]);
        let r = partition_tuple_oracle(&"1,2,3".parse().unwrap()).unwrap();
        assert_eq!(r.u_size, 13);
        assert_eq!(r.i_sizes, vec![5, 5, 5]);
        assert!(r.holds());
    }

    #[test]
    fn fubini_numbers() {
        let sizes: Vec<usize> = (1..=5)
            .map(|l| partition_tuple_oracle(&Index::new(vec![1; l])).unwrap().u_size)
            .collect();
        assert_eq!(sizes, vec![1, 3, 13, 75, 541]);
    }

    #[test]
    fn repeated_parts_still_hold() {
        assert!(partition_tuple_oracle(&"2,2,1,2".parse().unwrap()).unwrap().holds());
    }

    #[test]
    fn depth_guard() {
        assert!(partition_tuple_oracle(&Index::new(vec![1; 7])).is_err());
    }
}
