//! Exact span and rank computations, and the mechanised checks built on them.

mod dims;
mod identities;
mod key_prop;
mod linalg;
mod modular;
mod partitions;

pub use dims::{
    csf_dimension, csf_generators, dims_table, prop5_check, saturation_ranks, totient_dimension, DimEntry,
    DimTable,
};
pub use identities::{
    cor3_check, eq12_check, eq13_check, eq6_check, eq6_expansion, lemma2_basis_check, lemma2_elements,
    prop1_check, prop4_check, special_evaluations_check,
};
pub use key_prop::{key_prop_check, key_prop_lhs_closed_form, key_prop_rhs, KeyPropCheck};
pub use linalg::{
    distinct_rows, exact_rank, membership, rational_rank, Echelon, LinearSystem, MembershipCertificate, SpanIndex,
    SparseVec,
};
pub use modular::{is_prime, random_primes, rank_mod_p};
pub use partitions::{partition_tuple_oracle, PartitionReport};

use std::collections::HashSet;
use std::fmt;

use crate::error::Result;
use crate::free_algebra::{enumerate_words, Poly, Space, Word};
use crate::zeta_maps::{apply_alpha_tilde, apply_automorphism, left_mul_x, star, star_bar, Automorphism};

/// Which linear Kawashima span: `L_x φ(Hy ∗ Hy)` or `L_x α̃(Hy ∗̄ Hy)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KawashimaVariant {
    Star,
    StarBar,
}

impl fmt::Display for KawashimaVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KawashimaVariant::Star => "STAR",
            KawashimaVariant::StarBar => "STAR_BAR",
        })
    }
}

/// `x·φ(u ∗ v)` or `x·α̃(u ∗̄ v)`.
pub fn kawashima_element(u: &Word, v: &Word, variant: KawashimaVariant) -> Result<Poly> {
    let (u, v) = (Poly::from(u), Poly::from(v));
    let inner = match variant {
        KawashimaVariant::Star => apply_automorphism(Automorphism::Phi, &star(&u, &v)?),
        KawashimaVariant::StarBar => apply_alpha_tilde(&star_bar(&u, &v)?)?,
    };
    Ok(left_mul_x(&inner))
}

/// All generators of the weight-`weight` part of the Kawashima span: one per
/// unordered pair of words `u, v` ending in `y` with `deg u + deg v = weight - 1`.
/// Zero rows and repeated rows are dropped.
pub fn kawashima_generators(weight: usize, variant: KawashimaVariant) -> Result<Vec<(String, Poly)>> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    if weight < 3 {
        return Ok(out);
    }
    let op = match variant {
        KawashimaVariant::Star => ("phi", "*"),
        KawashimaVariant::StarBar => ("alpha~", "*bar"),
    };
    for du in 1..=(weight - 1) / 2 {
        let dv = weight - 1 - du;
        let us = enumerate_words(du, Space::H1);
        let vs = enumerate_words(dv, Space::H1);
        for u in &us {
            for v in &vs {
                if du == dv && v < u {
                    continue;
                }
                let g = kawashima_element(u, v, variant)?;
                if g.is_zero() || !seen.insert(g.clone()) {
                    continue;
                }
                out.push((format!("x.{}({u} {} {v})", op.0, op.1), g));
            }
        }
    }
    Ok(out)
}

pub fn kawashima_span(weight: usize, variant: KawashimaVariant) -> Result<LinearSystem> {
    LinearSystem::new(weight, kawashima_generators(weight, variant)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic_operators::{rho, rho_bar};

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn weight_three_generators() {
        let star_gens = kawashima_generators(3, KawashimaVariant::Star).unwrap();
        assert_eq!(star_gens.len(), 1);
        assert_eq!(star_gens[0].1, p("xyy - xxy"));
        let bar_gens = kawashima_generators(3, KawashimaVariant::StarBar).unwrap();
        assert_eq!(bar_gens.len(), 1);
        // α̃(y ∗̄ y) = α̃(2yy - xy) = 2xy - yy
        assert_eq!(bar_gens[0].1, p("2*xxy - xyy"));
    }

    #[test]
    fn weight_four_pair_count() {
        // pairs (y, xy) and (y, yy); (yy, y) is the same unordered pair
        let gens = kawashima_generators(4, KawashimaVariant::Star).unwrap();
        assert_eq!(gens.len(), 2);
    }

    #[test]
    fn rho_one_xy_is_in_both_spans() {
        let sys = kawashima_span(3, KawashimaVariant::Star).unwrap();
        let cert = membership(&sys, &rho(1, &p("xy"))).unwrap();
        assert!(cert.member);
        let bar = kawashima_span(3, KawashimaVariant::StarBar).unwrap();
        let cert = membership(&bar, &rho_bar(1, &p("xy"))).unwrap();
        assert!(cert.member);
        assert_eq!(cert.combination.len(), 1);
        assert_eq!(cert.combination[0].1, crate::free_algebra::rat(-1));
    }

    #[test]
    fn rank_of_rho_one_weight_four() {
        let gens: Vec<(String, Poly)> = enumerate_words(3, Space::CheckH1)
            .into_iter()
            .map(|w| (w.to_string(), rho(1, &Poly::from(w))))
            .collect();
        assert_eq!(exact_rank(&LinearSystem::new(4, gens).unwrap()).unwrap(), 2);
    }
}
