//! Rank modulo word-sized primes, used to cross-check the rational elimination.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::linalg::SparseVec;
use crate::error::{Error, Result};
use crate::free_algebra::Rational;

const PRIME_SEED: u64 = 0x5eed_c5f0_2010;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller–Rabin for `n < 2^32`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7] {
        if n % q == 0 {
            return n == q;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 7, 61] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `count` distinct primes drawn uniformly from `(2^30, 2^31)`.
pub fn random_primes(count: usize, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let candidate = rng.gen_range((1u64 << 30) + 1..1u64 << 31) | 1;
        if is_prime(candidate) && !out.contains(&candidate) {
            out.push(candidate);
        }
    }
    out
}

fn reduce_int(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits in u64")
}

fn reduce_rational(q: &Rational, p: u64) -> Option<u64> {
    let den = reduce_int(q.denom(), p);
    if den == 0 {
        return None;
    }
    Some(mul_mod(reduce_int(q.numer(), p), inv_mod(den, p), p))
}

type ModRow = Vec<(u32, u64)>;

/// `a + f * b` over `Z/p`, both rows sorted by column.
fn axpy_mod(a: &ModRow, f: u64, b: &ModRow, p: u64) -> ModRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, mul_mod(f, b[j].1, p)));
            j += 1;
        } else {
            let v = (a[i].1 + mul_mod(f, b[j].1, p)) % p;
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank over `Z/p`, or `None` if some denominator vanishes modulo `p`.
pub fn rank_mod_p(rows: &[SparseVec], p: u64) -> Option<usize> {
    let mut reduced: Vec<ModRow> = Vec::with_capacity(rows.len());
    for r in rows {
        let mut row = Vec::with_capacity(r.nnz());
        for (c, q) in r.entries() {
            let v = reduce_rational(q, p)?;
            if v != 0 {
                row.push((*c, v));
            }
        }
        reduced.push(row);
    }
    reduced.sort_by_key(Vec::len);

    let mut pivots: Vec<ModRow> = Vec::new();
    let mut pivot_of: HashMap<u32, usize> = HashMap::new();
    for mut row in reduced {
        let mut skip = 0;
        while skip < row.len() {
            let (col, a) = row[skip];
            match pivot_of.get(&col) {
                Some(&r) => row = axpy_mod(&row, p - a, &pivots[r], p),
                None => skip += 1,
            }
        }
        if let Some(&(col, lead)) = row.first() {
            let inv = inv_mod(lead, p);
            let monic: ModRow = row.iter().map(|&(c, v)| (c, mul_mod(v, inv, p))).collect();
            pivot_of.insert(col, pivots.len());
            pivots.push(monic);
        }
    }
    Some(pivots.len())
}

/// Ranks modulo `count` random primes above 2^30; all must agree.
pub fn cross_check_ranks(rows: &[SparseVec], _ncols: usize, count: usize) -> Result<Vec<usize>> {
    let mut ranks = Vec::with_capacity(count);
    let mut seed = PRIME_SEED;
    while ranks.len() < count {
        let p = random_primes(1, seed)[0];
        seed = seed.wrapping_add(1);
        if let Some(r) = rank_mod_p(rows, p) {
            ranks.push(r);
        }
    }
    if ranks.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::InternalInconsistency(format!(
            "modular ranks disagree across primes: {ranks:?}"
        )));
    }
    Ok(ranks)
}
