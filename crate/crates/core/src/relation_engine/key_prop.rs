use crate::cyclic_operators::rho;
use crate::error::{Error, Result};
use crate::free_algebra::{ratio, Index, Poly, Word};
use crate::zeta_maps::{a_element, apply_automorphism, star, strip_left_x, Automorphism};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeyPropCheck {
    pub lhs: Poly,
    pub rhs: Poly,
    pub equal: bool,
}

fn check_pre(n: usize, ks: &Index) -> Result<()> {
    if n == 0 {
        return Err(Error::PreconditionViolation("n must be at least 1".into()));
    }
    match ks.parts().first() {
        None => Err(Error::PreconditionViolation("index must have at least one part".into())),
        Some(&k1) if (k1 as usize) < n => Err(Error::PreconditionViolation(format!(
            "first part {k1} is smaller than n = {n}"
        ))),
        _ => Ok(()),
    }
}

pub(super) fn z_word(parts: impl IntoIterator<Item = u32>) -> Word {
    parts.into_iter().fold(Word::unit(), |w, k| w.concat(&Word::z(k)))
}

/// Parts of `ks` read cyclically from position `start` (0-based), `len` of them.
pub(super) fn cyclic_run(ks: &[u32], start: usize, len: usize) -> impl Iterator<Item = u32> + '_ {
    (0..len).map(move |s| ks[(start + s) % ks.len()])
}

/// `φ L_x⁻¹ ρₙ(A_{K-n+1} - A_{k₁-n+1} A_{k₂} ⋯ A_{k_l})`, `K = k₁ + ⋯ + k_l`.
fn lhs(n: usize, ks: &Index) -> Result<Poly> {
    let parts = ks.parts();
    let total = ks.weight() as usize;
    let product = parts[1..]
        .iter()
        .fold(a_element(parts[0] as usize - n + 1), |acc, &k| acc * a_element(k as usize));
    let arg = a_element(total - n + 1) - product;
    let stripped = strip_left_x(&rho(n, &arg))?;
    Ok(apply_automorphism(Automorphism::Phi, &stripped))
}

/// `z_K + (-1)^l Σ_j z_{k_j} ⋯ z_{k_l} z_{k_1} ⋯ z_{k_{j-1}}`
pub fn key_prop_lhs_closed_form(n: usize, ks: &Index) -> Result<Poly> {
    check_pre(n, ks)?;
    let parts = ks.parts();
    let l = parts.len();
    let sign = if l % 2 == 0 { 1 } else { -1 };
    let mut out = Poly::from(Word::z(ks.weight()));
    for j in 0..l {
        out.add_term(z_word(cyclic_run(parts, j, l)), ratio(sign, 1));
    }
    Ok(out)
}

/// `Σ_{m=2}^l ((-1)^{l-m}/m) Σ_j Σ_α H(j, α)`, where `H(j, α)` is the harmonic
/// product of the consecutive cyclic runs of lengths `α₁, …, α_m` from `k_j`.
pub fn key_prop_rhs(ks: &Index) -> Result<Poly> {
    let parts = ks.parts();
    let l = parts.len();
    let mut out = Poly::zero();
    for alpha in Index::compositions(l as u32) {
        let m = alpha.depth();
        if m < 2 {
            continue;
        }
        let sign = if (l - m) % 2 == 0 { 1 } else { -1 };
        let coeff = ratio(sign, m as i64);
        for j in 0..l {
            let mut start = j;
            let mut h = Poly::one();
            for &a in alpha.parts() {
                let block = Poly::from(z_word(cyclic_run(parts, start, a as usize)));
                h = star(&h, &block)?;
                start += a as usize;
            }
            out.add_scaled(&h, &coeff);
        }
    }
    Ok(out)
}

/// Evaluates both sides of the Key Proposition for `n` and `ks`.
pub fn key_prop_check(n: usize, ks: &Index) -> Result<KeyPropCheck> {
    check_pre(n, ks)?;
    let lhs = lhs(n, ks)?;
    let rhs = key_prop_rhs(ks)?;
    let equal = lhs == rhs;
    Ok(KeyPropCheck { lhs, rhs, equal })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(s: &str) -> Index {
        s.parse().unwrap()
    }

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn depth_two_ones() {
        let r = key_prop_check(1, &idx("1,1")).unwrap();
        assert!(r.equal);
        assert_eq!(r.lhs, p("xy + 2*yy"));
        assert_eq!(key_prop_lhs_closed_form(1, &idx("1,1")).unwrap(), r.lhs);
    }

    #[test]
    fn depth_one_is_trivial() {
        for k in 1..5 {
            let r = key_prop_check(1, &Index::new(vec![k])).unwrap();
            assert!(r.lhs.is_zero() && r.rhs.is_zero());
        }
        assert!(key_prop_lhs_closed_form(1, &idx("2")).unwrap().is_zero());
    }

    #[test]
    fn closed_form_instance() {
        assert_eq!(
            key_prop_lhs_closed_form(1, &idx("2,1")).unwrap(),
            p("xxy + xyy + yxy")
        );
    }

    #[test]
    fn n_two() {
        assert!(key_prop_check(2, &idx("2,1")).unwrap().equal);
        assert!(key_prop_check(2, &idx("3,1,2")).unwrap().equal);
    }

    #[test]
    fn precondition() {
        assert!(matches!(
            key_prop_check(3, &idx("2,1")),
            Err(Error::PreconditionViolation(_))
        ));
        assert!(matches!(
            key_prop_check(1, &Index::empty()),
            Err(Error::PreconditionViolation(_))
        ));
    }
}
