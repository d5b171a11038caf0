//! Single-instance checks of the explicit identities. Each returns whether the
//! two sides agree; the range sweeps live in `crate::suites`.

use super::key_prop::{cyclic_run, z_word};
use super::linalg::{exact_rank, LinearSystem};
use crate::cyclic_operators::{hoffman_ohno, rho, rho_bar};
use crate::error::Result;
use crate::free_algebra::{classify, rat, Index, Poly, Word};
use crate::zeta_maps::{a_element, apply_automorphism, left_mul_x, star, z_poly, Automorphism};

/// `ρ₁(w) = (C̄_w - C_w)(1)`
pub fn prop1_check(w: &Word) -> bool {
    rho(1, &Poly::from(w)) == hoffman_ohno(w)
}

/// `Σ_j Σ_{i<k_j} z_{k_j-i+1} z_{k_{j+1}} ⋯ z_{k_{j-1}} z_i`, the part shared by
/// the two special evaluations.
fn cyclic_double_sum(ks: &Index) -> Poly {
    let parts = ks.parts();
    let l = parts.len();
    let mut out = Poly::zero();
    for j in 0..l {
        let middle = z_word(cyclic_run(parts, j + 1, l - 1));
        for i in 1..parts[j] {
            let w = Word::z(parts[j] - i + 1).concat(&middle).concat(&Word::z(i));
            out.add_term(w, rat(1));
        }
    }
    out
}

/// Right-hand side of the Hoffman–Ohno expansion of `(C̄_w - C_w)(1)` for
/// `w = z_{k₁} ⋯ z_{k_l}`.
pub fn eq6_expansion(ks: &Index) -> Poly {
    let parts = ks.parts();
    let l = parts.len();
    let mut out = cyclic_double_sum(ks);
    for j in 0..l {
        let w = Word::x().concat(&z_word(cyclic_run(parts, j + 1, l)));
        out.add_term(w, rat(-1));
    }
    out
}

pub fn eq6_check(ks: &Index) -> bool {
    hoffman_ohno(&z_word(ks.parts().iter().copied())) == eq6_expansion(ks)
}

/// Both evaluations of §4.1: the `ρ₁` expansion on z-words, and
/// `ρ̄₁(γ(z_{k₁} ⋯ z_{k_l}) - x^k) = (double sum) - k z_{k+1}`.
pub fn special_evaluations_check(ks: &Index) -> bool {
    if ks.is_empty() {
        return false;
    }
    let w = Poly::from(z_word(ks.parts().iter().copied()));
    let first = rho(1, &w) == eq6_expansion(ks);

    let k = ks.weight();
    let arg = apply_automorphism(Automorphism::Gamma, &w) - Poly::from(Word::x_power(k as usize));
    let mut expected = cyclic_double_sum(ks);
    expected.add_term(Word::z(k + 1), -rat(k as i64));
    first && rho_bar(1, &arg) == expected
}

/// `ρₙ(z w) = ρₙ₊₁(w)` with `z = x + y`.
pub fn eq13_check(n: usize, w: &Word) -> bool {
    let zw = Poly::z() * Poly::from(w);
    rho(n, &zw) == rho(n + 1, &Poly::from(w))
}

fn kawashima_form(p: &Poly) -> Poly {
    left_mul_x(&apply_automorphism(Automorphism::Phi, p))
}

/// `ρₙ(z_k) = L_x φ(A_{k-1} ∗ z_n)`
pub fn prop4_check(n: usize, k: usize) -> Result<bool> {
    let lhs = rho(n, &z_poly(k as u32));
    let rhs = kawashima_form(&star(&a_element(k - 1), &z_poly(n as u32))?);
    Ok(lhs == rhs)
}

/// `A_{k-1} ∗ z_n = Σ_{i=1}^k A_{k-i} x^{n-1} A_i`
pub fn eq12_check(n: usize, k: usize) -> Result<bool> {
    let lhs = star(&a_element(k - 1), &z_poly(n as u32))?;
    let mut rhs = Poly::zero();
    for i in 1..=k {
        rhs += a_element(k - i).right_mul_word(&Word::x_power(n - 1)) * a_element(i);
    }
    Ok(lhs == rhs)
}

/// `ρₙ(y z_k) = L_x φ(A_{k-1} ∗ z_{n+1} - A_k ∗ z_n)`
pub fn cor3_check(n: usize, k: usize) -> Result<bool> {
    let lhs = rho(n, &Poly::from(Word::y().concat(&Word::z(k as u32))));
    let inner = star(&a_element(k - 1), &z_poly(n as u32 + 1))? - star(&a_element(k), &z_poly(n as u32))?;
    Ok(lhs == kawashima_form(&inner))
}

/// `A_d - A_{k₁} ⋯ A_{k_l}` for every composition of `d` with at least two parts.
pub fn lemma2_elements(d: usize) -> Vec<(String, Poly)> {
    let top = a_element(d);
    Index::compositions(d as u32)
        .into_iter()
        .filter(|c| c.depth() >= 2)
        .map(|c| {
            let product = c
                .parts()
                .iter()
                .fold(Poly::one(), |acc, &k| acc * a_element(k as usize));
            (format!("A[{c}]"), &top - &product)
        })
        .collect()
}

/// The degree-`d` elements number `2^(d-1) - 1`, lie in `Ȟ¹`, and have full rank.
///
/// Every row contains the dense `A_d`, so the rank is taken after subtracting
/// the row for `(1, …, 1)` from all others. That is an elementary row operation
/// and leaves rows `y^d - A_{k₁} ⋯ A_{k_l}` whose leading words are pairwise
/// distinct, which keeps the elimination free of fill-in.
pub fn lemma2_basis_check(d: usize) -> Result<bool> {
    if d < 2 {
        return Ok(false);
    }
    let elements = lemma2_elements(d);
    let expected = (1usize << (d - 1)) - 1;
    if elements.len() != expected {
        return Ok(false);
    }
    let inside = elements
        .iter()
        .all(|(_, p)| !p.is_zero() && p.is_homogeneous_of(d) && p.words().all(|w| classify(w).in_check_h1));
    if !inside {
        return Ok(false);
    }
    let reference = elements
        .iter()
        .find(|(label, _)| *label == format!("A[{}]", Index::new(vec![1; d])))
        .map(|(_, p)| p.clone())
        .expect("the all-ones composition is present for d >= 2");
    let rows: Vec<(String, Poly)> = elements
        .into_iter()
        .map(|(label, p)| if p == reference { (label, p) } else { (label, p - reference.clone()) })
        .collect();
    Ok(exact_rank(&LinearSystem::new(d, rows)?)? == expected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_algebra::{enumerate_words, Space};

    fn idx(s: &str) -> Index {
        s.parse().unwrap()
    }

    #[test]
    fn special_examples() {
        for s in ["2", "2,1", "1,1,1", "3,1,2"] {
            assert!(special_evaluations_check(&idx(s)), "{s}");
        }
        let w = Poly::from(Word::z(2));
        let arg = apply_automorphism(Automorphism::Gamma, &w) - Poly::from(Word::x_power(2));
        assert_eq!(rho_bar(1, &arg), "xyy - 2*xxy".parse().unwrap());
    }

    #[test]
    fn prop4_small() {
        for n in 1..4 {
            assert!(prop4_check(n, 1).unwrap());
            assert_eq!(star(&a_element(0), &z_poly(n as u32)).unwrap(), z_poly(n as u32));
        }
        assert!(eq12_check(1, 2).unwrap());
        assert!(prop4_check(1, 2).unwrap());
        assert!(cor3_check(1, 2).unwrap());
    }

    #[test]
    fn prop1_and_eq6_small() {
        for w in enumerate_words(5, Space::H) {
            assert!(prop1_check(&w), "{w}");
        }
        assert!(eq6_check(&idx("2,1,3")));
    }

    #[test]
    fn lemma2_small_degrees() {
        assert_eq!(lemma2_elements(2), vec![("A[1,1]".to_string(), "xy".parse().unwrap())]);
        for d in 2..=7 {
            assert!(lemma2_basis_check(d).unwrap(), "d = {d}");
        }
    }

    #[test]
    fn lemma2_without_row_operation() {
        let sys = LinearSystem::new(6, lemma2_elements(6)).unwrap();
        assert_eq!(exact_rank(&sys).unwrap(), 31);
    }
}
