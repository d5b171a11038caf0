//! Sparse exact linear algebra over Q.

use std::collections::{HashMap, HashSet};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::free_algebra::{Poly, Rational, Word};

use super::modular;

/// Sorted `(column, value)` pairs with no zero values.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec(pub(crate) Vec<(u32, Rational)>);

impl SparseVec {
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.0.len()
    }

    pub fn leading(&self) -> Option<&(u32, Rational)> {
        self.0.first()
    }

    pub fn entries(&self) -> &[(u32, Rational)] {
        &self.0
    }

    fn unit(col: u32) -> Self {
        SparseVec(vec![(col, Rational::one())])
    }

    /// `self + a * other`
    pub fn axpy(&self, a: &Rational, other: &SparseVec) -> SparseVec {
        let (lhs, rhs) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(lhs.len() + rhs.len());
        let (mut i, mut j) = (0, 0);
        while i < lhs.len() || j < rhs.len() {
            let take_left = j == rhs.len() || (i < lhs.len() && lhs[i].0 < rhs[j].0);
            let take_right = i == lhs.len() || (j < rhs.len() && rhs[j].0 < lhs[i].0);
            if take_left {
                out.push(lhs[i].clone());
                i += 1;
            } else if take_right {
                out.push((rhs[j].0, a * &rhs[j].1));
                j += 1;
            } else {
                let v = &lhs[i].1 + a * &rhs[j].1;
                if !v.is_zero() {
                    out.push((lhs[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec(out)
    }

    pub fn scale(&self, a: &Rational) -> SparseVec {
        if a.is_zero() {
            return SparseVec::default();
        }
        SparseVec(self.0.iter().map(|(c, v)| (*c, v * a)).collect())
    }

    /// Scaled so that the leading entry is 1.
    pub fn monic(&self) -> SparseVec {
        match self.leading() {
            None => self.clone(),
            Some((_, lead)) => self.scale(&lead.recip()),
        }
    }
}

/// Generators of one weight, as sparse rows over a fixed column list.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    pub weight: usize,
    pub columns: Vec<Word>,
    pub rows: Vec<SparseVec>,
    pub labels: Vec<String>,
    column_of: HashMap<Word, u32>,
}

impl LinearSystem {
    /// Columns are the union of the generator supports, in canonical word order.
    pub fn new(weight: usize, generators: Vec<(String, Poly)>) -> Result<Self> {
        let mut support: Vec<Word> = generators
            .iter()
            .flat_map(|(_, p)| p.words().cloned())
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        support.sort();
        Self::with_columns(weight, support, generators)
    }

    pub fn with_columns(weight: usize, columns: Vec<Word>, generators: Vec<(String, Poly)>) -> Result<Self> {
        if let Some(w) = columns.iter().find(|w| w.degree() != weight) {
            return Err(Error::WeightMismatch {
                expected: weight,
                found: w.degree(),
            });
        }
        let column_of: HashMap<Word, u32> = columns.iter().cloned().zip(0u32..).collect();
        let mut sys = LinearSystem {
            weight,
            columns,
            rows: Vec::with_capacity(generators.len()),
            labels: Vec::with_capacity(generators.len()),
            column_of,
        };
        for (label, p) in generators {
            let row = sys.encode(&p)?.ok_or_else(|| {
                Error::PreconditionViolation(format!("generator `{label}` has support outside the column set"))
            })?;
            sys.rows.push(row);
            sys.labels.push(label);
        }
        Ok(sys)
    }

    pub fn column_of(&self, w: &Word) -> Option<u32> {
        self.column_of.get(w).copied()
    }

    /// Coordinates of `p`, or `None` when `p` has a word outside the columns.
    pub fn encode(&self, p: &Poly) -> Result<Option<SparseVec>> {
        let mut entries = Vec::with_capacity(p.len());
        for (w, c) in p.terms() {
            if w.degree() != self.weight {
                return Err(Error::WeightMismatch {
                    expected: self.weight,
                    found: w.degree(),
                });
            }
            match self.column_of(w) {
                Some(col) => entries.push((col, c.clone())),
                None => return Ok(None),
            }
        }
        entries.sort_by_key(|e| e.0);
        Ok(Some(SparseVec(entries)))
    }

    pub fn decode(&self, v: &SparseVec) -> Poly {
        v.0.iter()
            .map(|(c, a)| (self.columns[*c as usize].clone(), a.clone()))
            .collect()
    }

    pub fn generator(&self, i: usize) -> Poly {
        self.decode(&self.rows[i])
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipCertificate {
    pub member: bool,
    /// `(generator label, coefficient)`; empty unless `member`.
    pub combination: Vec<(String, Rational)>,
}

/// Row echelon form built incrementally. Each stored row has leading
/// coefficient 1 and a leading column no other stored row leads with.
/// With `track` set, every stored row also carries its expression as a
/// combination of the inserted generators.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    combos: Vec<SparseVec>,
    pivot_of: HashMap<u32, usize>,
    track: bool,
}

impl Echelon {
    pub fn new(track: bool) -> Self {
        Echelon {
            track,
            ..Default::default()
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Eliminates leading entries of `v` against the stored pivots. Returns the
    /// residual and the generator combination that was subtracted.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut residual = v.clone();
        let mut combo = SparseVec::default();
        let mut skip = 0;
        while skip < residual.nnz() {
            let (col, a) = residual.0[skip].clone();
            match self.pivot_of.get(&col) {
                Some(&r) => {
                    let f = -a;
                    residual = residual.axpy(&f, &self.rows[r]);
                    if self.track {
                        combo = combo.axpy(&f, &self.combos[r]);
                    }
                }
                None => skip += 1,
            }
        }
        (residual, combo)
    }

    /// Adds generator number `gen` with coordinates `v`; returns whether it was
    /// independent of the rows inserted so far.
    pub fn insert(&mut self, gen: usize, v: &SparseVec) -> bool {
        let (residual, combo) = self.reduce(v);
        let Some((lead_col, lead)) = residual.leading().cloned() else {
            return false;
        };
        let inv = lead.recip();
        self.pivot_of.insert(lead_col, self.rows.len());
        self.rows.push(residual.scale(&inv));
        if self.track {
            // residual = v + combo, written over the generators.
            let full = combo.axpy(&Rational::one(), &SparseVec::unit(gen as u32));
            self.combos.push(full.scale(&inv));
        }
        true
    }
}

/// Exact rank of the generator rows.
///
/// Rows are deduplicated up to scale and inserted by increasing support size.
/// The rank is also computed modulo two random primes above 2^30; a disagreement
/// is reported as [`Error::InternalInconsistency`]. Since the rank modulo a
/// prime never exceeds the rank over Q, a modular rank equal to
/// `min(rows, columns)` is already exact and the rational elimination is skipped.
pub fn exact_rank(sys: &LinearSystem) -> Result<usize> {
    let rows = distinct_rows(&sys.rows);
    let mod_ranks = modular::cross_check_ranks(&rows, sys.columns.len(), 2)?;
    let bound = rows.len().min(sys.columns.len());
    let exact = if mod_ranks.iter().all(|&r| r == bound) {
        bound
    } else {
        rational_rank(&rows)
    };
    if let Some(&r) = mod_ranks.iter().find(|&&r| r != exact) {
        return Err(Error::InternalInconsistency(format!(
            "rank over Q is {exact} but a modular rank is {r}"
        )));
    }
    Ok(exact)
}

/// Rank by rational elimination alone.
pub fn rational_rank(rows: &[SparseVec]) -> usize {
    let mut order: Vec<&SparseVec> = rows.iter().collect();
    order.sort_by_key(|r| r.nnz());
    let mut ech = Echelon::new(false);
    for r in order {
        ech.insert(0, r);
    }
    ech.rank()
}

/// Nonzero rows, deduplicated up to a scalar factor.
pub fn distinct_rows(rows: &[SparseVec]) -> Vec<SparseVec> {
    let mut seen = HashSet::new();
    rows.iter()
        .filter(|r| !r.is_zero())
        .map(SparseVec::monic)
        .filter(|r| seen.insert(r.clone()))
        .collect()
}

/// The echelon form of a system, kept around to answer many membership queries.
#[derive(Clone, Debug)]
pub struct SpanIndex {
    system: LinearSystem,
    echelon: Echelon,
}

impl SpanIndex {
    pub fn new(system: LinearSystem) -> Self {
        let mut order: Vec<usize> = (0..system.rows.len()).collect();
        order.sort_by_key(|&i| system.rows[i].nnz());
        let mut echelon = Echelon::new(true);
        for i in order {
            echelon.insert(i, &system.rows[i]);
        }
        SpanIndex { system, echelon }
    }

    pub fn system(&self) -> &LinearSystem {
        &self.system
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    /// Decides whether `q` lies in the span. A positive answer comes with a
    /// combination that is re-expanded and compared with `q` before returning.
    pub fn membership(&self, q: &Poly) -> Result<MembershipCertificate> {
        let non_member = MembershipCertificate {
            member: false,
            combination: Vec::new(),
        };
        let Some(v) = self.system.encode(q)? else {
            return Ok(non_member);
        };
        let (residual, combo) = self.echelon.reduce(&v);
        if !residual.is_zero() {
            return Ok(non_member);
        }
        // v - Σ combo_i g_i = 0 where the reduction subtracted combo; so v = -combo.
        let coefficients = combo.scale(&-Rational::one());
        let mut check = Poly::zero();
        for (g, c) in coefficients.entries() {
            check.add_scaled(&self.system.generator(*g as usize), c);
        }
        if &check != q {
            return Err(Error::InternalInconsistency(
                "membership certificate does not reproduce the query".into(),
            ));
        }
        Ok(MembershipCertificate {
            member: true,
            combination: coefficients
                .entries()
                .iter()
                .map(|(g, c)| (self.system.labels[*g as usize].clone(), c.clone()))
                .collect(),
        })
    }

    /// Whether every generator of `other` lies in this span.
    pub fn contains_all(&self, other: &[Poly]) -> Result<bool> {
        for p in other {
            if !self.membership(p)?.member {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn membership(sys: &LinearSystem, q: &Poly) -> Result<MembershipCertificate> {
    if !q.is_homogeneous_of(sys.weight) {
        let found = q.words().map(Word::degree).find(|&d| d != sys.weight).unwrap_or(0);
        return Err(Error::WeightMismatch {
            expected: sys.weight,
            found,
        });
    }
    SpanIndex::new(sys.clone()).membership(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_algebra::rat;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn system(weight: usize, gens: &[&str]) -> LinearSystem {
        LinearSystem::new(
            weight,
            gens.iter().enumerate().map(|(i, g)| (format!("g{i}"), p(g))).collect(),
        )
        .unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(exact_rank(&system(3, &["xyy - xxy"])).unwrap(), 1);
        assert_eq!(exact_rank(&system(3, &["xyy - xxy", "2*xyy - 2*xxy"])).unwrap(), 1);
        assert_eq!(exact_rank(&system(3, &["xyy", "xxy", "xyy + xxy"])).unwrap(), 2);
        assert_eq!(exact_rank(&system(3, &[])).unwrap(), 0);
    }

    #[test]
    fn rational_elimination_path() {
        // Rank 2 in 3 columns with 3 rows: forces the exact elimination.
        let sys = system(2, &["xy + yy", "xx - yy", "xy + xx"]);
        assert_eq!(rational_rank(&sys.rows), 2);
        assert_eq!(exact_rank(&sys).unwrap(), 2);
    }

    #[test]
    fn membership_examples() {
        let sys = system(3, &["xyy - xxy"]);
        let cert = membership(&sys, &p("xyy - xxy")).unwrap();
        assert!(cert.member);
        assert_eq!(cert.combination, vec![("g0".to_string(), rat(1))]);
        assert!(!membership(&sys, &p("xxy")).unwrap().member);
        assert!(!membership(&sys, &p("yyy")).unwrap().member);
        assert!(matches!(
            membership(&sys, &p("xy")),
            Err(Error::WeightMismatch { expected: 3, found: 2 })
        ));
    }

    #[test]
    fn certificate_combines_several_generators() {
        let sys = system(2, &["xy + yy", "xx - yy", "xx"]);
        let q = p("3*xy + 1/2*xx");
        let cert = membership(&sys, &q).unwrap();
        assert!(cert.member);
        let mut back = Poly::zero();
        for (label, c) in &cert.combination {
            let i: usize = label[1..].parse().unwrap();
            back.add_scaled(&sys.generator(i), c);
        }
        assert_eq!(back, q);
    }

    #[test]
    fn axpy_cancels() {
        let a = SparseVec(vec![(0, rat(1)), (2, rat(3))]);
        let b = SparseVec(vec![(0, rat(1)), (1, rat(1))]);
        assert_eq!(a.axpy(&rat(-1), &b), SparseVec(vec![(1, rat(-1)), (2, rat(3))]));
    }
}
