//! Range sweeps over the identities, one named suite per claim.
//!
//! Cases inside a suite are evaluated in parallel; the report lists cases in
//! their generation order, so it does not depend on the thread count.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cyclic_operators::{rho, rho_bar, OperatorKind};
use crate::error::{Error, Result};
use crate::free_algebra::{enumerate_words, Index, Poly, Space, Word};
use crate::numeric_zeta::{
    csf_numeric_check, evaluate_z, evaluate_z_bar, star_consistency, zeta_num, zeta_star_num, TruncationParams,
    ZetaKind,
};
use crate::relation_engine::{
    cor3_check, eq12_check, eq13_check, eq6_check, key_prop_check, kawashima_span, lemma2_basis_check,
    partition_tuple_oracle, prop1_check, prop4_check, prop5_check, saturation_ranks, special_evaluations_check,
    KawashimaVariant, SpanIndex,
};
use crate::zeta_maps::{apply_alpha_tilde, apply_automorphism, apply_d, star, star_bar, Automorphism};

/// Acceptance tolerance for the numeric suite.
pub const NUMERIC_TOLERANCE: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Lemma1,
    Lemma3,
    Lemma4,
    Eq10,
    Eq11,
    Eq13,
    Prop1,
    Prop3,
    Prop4,
    Prop5,
    KeyProp,
    Eq6,
    Eq7Eq8,
    Special,
    Lemma2,
    Kawashima,
    Numeric,
    Tensor,
    Saturation,
}

impl Suite {
    pub const ALL: [Suite; 19] = [
        Suite::Lemma1,
        Suite::Lemma3,
        Suite::Lemma4,
        Suite::Eq10,
        Suite::Eq11,
        Suite::Eq13,
        Suite::Prop1,
        Suite::Prop3,
        Suite::Prop4,
        Suite::Prop5,
        Suite::KeyProp,
        Suite::Eq6,
        Suite::Eq7Eq8,
        Suite::Special,
        Suite::Lemma2,
        Suite::Kawashima,
        Suite::Numeric,
        Suite::Tensor,
        Suite::Saturation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma1 => "lemma1",
            Suite::Lemma3 => "lemma3",
            Suite::Lemma4 => "lemma4",
            Suite::Eq10 => "eq10",
            Suite::Eq11 => "eq11",
            Suite::Eq13 => "eq13",
            Suite::Prop1 => "prop1",
            Suite::Prop3 => "prop3",
            Suite::Prop4 => "prop4",
            Suite::Prop5 => "prop5",
            Suite::KeyProp => "keyprop",
            Suite::Eq6 => "eq6",
            Suite::Eq7Eq8 => "eq7eq8",
            Suite::Special => "special",
            Suite::Lemma2 => "lemma2",
            Suite::Kawashima => "kawashima",
            Suite::Numeric => "numeric",
            Suite::Tensor => "tensor",
            Suite::Saturation => "saturation",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

/// Optional overrides; anything left `None` takes the suite's default range.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SuiteBounds {
    pub max_weight: Option<usize>,
    pub max_degree: Option<usize>,
    pub max_n: Option<usize>,
    pub cutoff: Option<u64>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checked: usize,
    pub failed: usize,
    pub first_failure: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failed == 0 && self.checked > 0
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} checked, {} passed, {} failed",
            self.suite,
            self.checked,
            self.checked - self.failed,
            self.failed
        )?;
        if let Some(first) = &self.first_failure {
            write!(f, "\nfirst counterexample: {first}")?;
        }
        Ok(())
    }
}

struct Case {
    label: String,
    check: Box<dyn Fn() -> Result<bool> + Send + Sync>,
}

fn case(label: impl Into<String>, check: impl Fn() -> Result<bool> + Send + Sync + 'static) -> Case {
    Case {
        label: label.into(),
        check: Box::new(check),
    }
}

fn run_cases(suite: Suite, cases: Vec<Case>) -> SuiteReport {
    let outcomes: Vec<Option<String>> = cases
        .par_iter()
        .map(|c| match (c.check)() {
            Ok(true) => None,
            Ok(false) => Some(c.label.clone()),
            Err(e) => Some(format!("{} ({e})", c.label)),
        })
        .collect();
    let failures: Vec<String> = outcomes.into_iter().flatten().collect();
    SuiteReport {
        suite,
        checked: cases.len(),
        failed: failures.len(),
        first_failure: failures.into_iter().next(),
    }
}

fn words_up_to(max_degree: usize, space: Space, min_degree: usize) -> Vec<Word> {
    (min_degree..=max_degree).flat_map(|d| enumerate_words(d, space)).collect()
}

fn indices_up_to(max_weight: usize) -> Vec<Index> {
    Index::up_to_weight(max_weight as u32)
        .into_iter()
        .filter(|i| !i.is_empty())
        .collect()
}

fn random_word(rng: &mut ChaCha8Rng, len: usize) -> Word {
    let s: String = (0..len).map(|_| if rng.gen_bool(0.5) { 'x' } else { 'y' }).collect();
    if s.is_empty() {
        Word::unit()
    } else {
        s.parse().expect("random word over {x, y}")
    }
}

/// Runs one suite over its range (the defaults are the acceptance ranges).
pub fn run_suite(suite: Suite, bounds: &SuiteBounds) -> Result<SuiteReport> {
    let cases = match suite {
        Suite::Lemma1 => {
            let max = bounds.max_degree.unwrap_or(10);
            words_up_to(max, Space::H, 2)
                .into_iter()
                .map(|w| {
                    case(format!("rho1({w}) vs rho1 of its rotation"), move || {
                        let r = rho(1, &Poly::from(&w));
                        Ok((1..w.degree()).all(|k| rho(1, &Poly::from(w.rotate(k))) == r))
                    })
                })
                .collect()
        }
        Suite::Lemma3 | Suite::Eq13 | Suite::Tensor => {
            let max = bounds.max_degree.unwrap_or(8);
            let max_n = bounds.max_n.unwrap_or(3);
            let mut cases = Vec::new();
            for w in words_up_to(max, Space::H, 0) {
                for n in 1..=max_n {
                    let w = w.clone();
                    cases.push(match suite {
                        Suite::Lemma3 => case(format!("n = {n}, w = {w}"), move || {
                            let p = Poly::from(&w);
                            Ok(rho(n, &p) == apply_d(&rho_bar(n, &p))?)
                        }),
                        Suite::Eq13 => case(format!("n = {n}, w = {w}"), move || Ok(eq13_check(n, &w))),
                        _ => case(format!("n = {n}, w = {w}"), move || {
                            let p = Poly::from(&w);
                            Ok([OperatorKind::Rho, OperatorKind::RhoBar, OperatorKind::Partial]
                                .into_iter()
                                .all(|k| k.apply(n, &p) == k.apply_via_tensor(n, &p)))
                        }),
                    });
                }
            }
            cases
        }
        Suite::Lemma4 => {
            let samples = bounds.samples.unwrap_or(250);
            let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed.unwrap_or(4));
            let z = Poly::z();
            (0..samples)
                .map(|_| {
                    let len = rng.gen_range(0..5);
                    let w = random_word(&mut rng, len).concat(&Word::y());
                    let len = rng.gen_range(0..4);
                    let w2 = random_word(&mut rng, len);
                    let w2 = if w2.is_unit() { w2 } else { w2.concat(&Word::y()) };
                    let q = rng.gen_range(1..=4u32);
                    let z = z.clone();
                    case(format!("w = {w}, w' = {w2}, q = {q}"), move || {
                        let (pw, pw2) = (Poly::from(&w), Poly::from(&w2));
                        let zq_w2 = Poly::from(Word::z(q).concat(&w2));
                        let zw = &z * &pw;
                        let lhs = star(&zw, &zq_w2)?;
                        let rhs = &z * &star(&pw, &zq_w2)? + Poly::from(Word::z(q)) * star(&zw, &pw2)?;
                        Ok(lhs == rhs)
                    })
                })
                .collect()
        }
        Suite::Eq10 => {
            let max = bounds.max_weight.unwrap_or(7);
            words_up_to(max, Space::H1, 1)
                .into_iter()
                .map(|w| {
                    case(format!("w = {w}"), move || {
                        let p = Poly::from(&w);
                        let lhs = apply_automorphism(Automorphism::Phi, &apply_d(&p)?);
                        Ok(lhs == -apply_d(&apply_alpha_tilde(&p)?)?)
                    })
                })
                .collect()
        }
        Suite::Eq11 => {
            let max = bounds.max_weight.unwrap_or(7);
            let words = words_up_to(max, Space::H1, 0);
            let mut cases = Vec::new();
            for u in &words {
                for v in &words {
                    if u.degree() + v.degree() > max {
                        continue;
                    }
                    let (u, v) = (Poly::from(u), Poly::from(v));
                    cases.push(case(format!("u = {u}, v = {v}"), move || {
                        Ok(apply_d(&star_bar(&u, &v)?)? == star(&apply_d(&u)?, &apply_d(&v)?)?)
                    }));
                }
            }
            cases
        }
        Suite::Prop1 => {
            let max = bounds.max_weight.or(bounds.max_degree).unwrap_or(8);
            words_up_to(max, Space::H, 1)
                .into_iter()
                .map(|w| case(format!("w = {w}"), move || Ok(prop1_check(&w))))
                .collect()
        }
        Suite::Eq6 | Suite::Special => {
            let max = bounds.max_weight.unwrap_or(if suite == Suite::Eq6 { 8 } else { 7 });
            indices_up_to(max)
                .into_iter()
                .map(|ks| {
                    if suite == Suite::Eq6 {
                        case(format!("ks = ({ks})"), move || Ok(eq6_check(&ks)))
                    } else {
                        case(format!("ks = ({ks})"), move || Ok(special_evaluations_check(&ks)))
                    }
                })
                .collect()
        }
        Suite::Kawashima | Suite::Prop3 => {
            let max = bounds.max_weight.unwrap_or(9);
            let max_n = bounds.max_n.unwrap_or(3);
            let variant = if suite == Suite::Kawashima {
                KawashimaVariant::Star
            } else {
                KawashimaVariant::StarBar
            };
            let spans: Vec<std::sync::Arc<SpanIndex>> = (0..=max)
                .map(|w| {
                    let sys = if w >= 3 { kawashima_span(w, variant)? } else { kawashima_span(3, variant)? };
                    Ok(std::sync::Arc::new(SpanIndex::new(sys)))
                })
                .collect::<Result<_>>()?;
            let mut cases = Vec::new();
            for n in 1..=max_n {
                for d in 2..=max.saturating_sub(n) {
                    for w in enumerate_words(d, Space::CheckH1) {
                        let span = spans[d + n].clone();
                        cases.push(case(format!("n = {n}, w = {w} ({variant})"), move || {
                            let p = Poly::from(&w);
                            let image = match variant {
                                KawashimaVariant::Star => rho(n, &p),
                                KawashimaVariant::StarBar => rho_bar(n, &p),
                            };
                            Ok(span.membership(&image)?.member)
                        }));
                    }
                }
            }
            cases
        }
        Suite::Prop4 => {
            let max = bounds.max_weight.unwrap_or(9);
            let mut cases = Vec::new();
            for n in 1..max {
                for k in 1..=max - n {
                    cases.push(case(format!("Prop. 4, n = {n}, k = {k}"), move || prop4_check(n, k)));
                    cases.push(case(format!("Eq. (12), n = {n}, k = {k}"), move || eq12_check(n, k)));
                    cases.push(case(format!("Cor. 3, n = {n}, k = {k}"), move || cor3_check(n, k)));
                }
            }
            cases
        }
        Suite::Prop5 => {
            let max_d = bounds.max_degree.unwrap_or(7);
            let max_n = bounds.max_n.unwrap_or(3);
            let mut cases = Vec::new();
            for n in 1..=max_n {
                for d in 2..=max_d {
                    cases.push(case(format!("n = {n}, d = {d}"), move || prop5_check(n, d)));
                }
            }
            cases
        }
        Suite::KeyProp => {
            let max = bounds.max_weight.unwrap_or(7);
            let max_n = bounds.max_n.unwrap_or(3);
            let mut cases = Vec::new();
            for ks in indices_up_to(max) {
                for n in 1..=max_n.min(ks.parts()[0] as usize) {
                    let ks = ks.clone();
                    cases.push(case(format!("n = {n}, ks = ({ks})"), move || Ok(key_prop_check(n, &ks)?.equal)));
                }
            }
            cases
        }
        Suite::Eq7Eq8 => {
            let max_depth = bounds.max_n.unwrap_or(4).min(6);
            let max = bounds.max_weight.unwrap_or(7);
            let mut indices: Vec<Index> = (1..=max_depth as u32).map(|l| Index::new((1..=l).collect())).collect();
            indices.extend(indices_up_to(max).into_iter().filter(|i| i.depth() <= max_depth));
            indices
                .into_iter()
                .map(|ks| case(format!("ks = ({ks})"), move || Ok(partition_tuple_oracle(&ks)?.holds())))
                .collect()
        }
        Suite::Lemma2 => {
            let max = bounds.max_degree.unwrap_or(12).min(12);
            (2..=max)
                .map(|d| case(format!("d = {d}"), move || lemma2_basis_check(d)))
                .collect()
        }
        Suite::Saturation => {
            let max = bounds.max_weight.unwrap_or(10);
            (3..=max)
                .map(|w| {
                    case(format!("weight {w}"), move || {
                        let (all, first) = saturation_ranks(w)?;
                        Ok(all == first)
                    })
                })
                .collect()
        }
        Suite::Numeric => numeric_cases(bounds)?,
    };
    Ok(run_cases(suite, cases))
}

fn numeric_cases(bounds: &SuiteBounds) -> Result<Vec<Case>> {
    let params = match bounds.cutoff {
        Some(m) => TruncationParams::with_cutoff(m)?,
        None => TruncationParams::default(),
    };
    let max = bounds.max_weight.unwrap_or(7);
    let max_n = bounds.max_n.unwrap_or(2);
    let tol = NUMERIC_TOLERANCE;
    let mut cases = Vec::new();
    for n in 1..=max_n {
        for d in 2..=max.saturating_sub(n) {
            for w in enumerate_words(d, Space::CheckH1) {
                let p = Poly::from(&w);
                cases.push(case(format!("|Z(rho{n}({w}))| < {tol}"), move || {
                    Ok(evaluate_z(&rho(n, &p), &params)?.value.abs() < tol)
                }));
                let p = Poly::from(&w);
                cases.push(case(format!("|Zbar(rhobar{n}({w}))| < {tol}"), move || {
                    Ok(evaluate_z_bar(&rho_bar(n, &p), &params)?.value.abs() < tol)
                }));
            }
        }
    }
    let i21 = Index::new(vec![2, 1]);
    let i3 = Index::new(vec![3]);
    let (a, b) = (i21.clone(), i3.clone());
    cases.push(case("zeta(2,1) vs zeta(3)", move || {
        Ok((zeta_num(&a, &params)?.value - zeta_num(&b, &params)?.value).abs() < tol)
    }));
    cases.push(case("zeta*(2,1) vs 2 zeta(3)", move || {
        Ok((zeta_star_num(&i21, &params)?.value - 2.0 * zeta_num(&i3, &params)?.value).abs() < tol)
    }));
    for ks in indices_up_to(max.saturating_sub(1)) {
        if ks.parts().iter().all(|&k| k == 1) {
            continue;
        }
        for kind in [ZetaKind::Mzv, ZetaKind::Mzsv] {
            let ks = ks.clone();
            cases.push(case(format!("cyclic sum formula {kind:?} ({ks})"), move || {
                Ok(csf_numeric_check(&ks, kind, &params)?.within(tol))
            }));
        }
    }
    for w in words_up_to(max.min(6), Space::H0, 2) {
        let p = Poly::from(&w);
        cases.push(case(format!("Zbar({w}) vs Z(d({w}))"), move || {
            let (diff, bound) = star_consistency(&p, &params)?;
            Ok(diff < tol.max(bound))
        }));
    }
    Ok(cases)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!("nope".parse::<Suite>(), Err(Error::UnknownSuite("nope".into())));
    }

    #[test]
    fn small_runs_pass() {
        let small = SuiteBounds {
            max_weight: Some(5),
            max_degree: Some(5),
            max_n: Some(2),
            samples: Some(20),
            ..Default::default()
        };
        for s in Suite::ALL {
            let r = run_suite(s, &small).unwrap();
            assert!(r.passed(), "{r}");
        }
    }
}
