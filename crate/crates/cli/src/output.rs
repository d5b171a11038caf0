use clap::ValueEnum;
use csf_core::numeric_zeta::{CsfNumericReport, NumericResult};
use csf_core::relation_engine::{KeyPropCheck, MembershipCertificate};
use csf_core::Poly;
use serde::Serialize;
use serde_json::json;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Serialize)]
struct Term {
    coeff: String,
    word: String,
}

fn terms(p: &Poly) -> Vec<Term> {
    p.terms()
        .map(|(w, c)| Term {
            coeff: c.to_string(),
            word: w.to_string(),
        })
        .collect()
}

pub fn print_poly(p: &Poly, format: Format) {
    match format {
        Format::Text => println!("{p}"),
        Format::Structured => println!("{}", json!({ "terms": terms(p) })),
    }
}

pub fn print_certificate(cert: &MembershipCertificate, format: Format) {
    match format {
        Format::Text => {
            println!("{}", if cert.member { "member" } else { "not a member" });
            for (label, c) in &cert.combination {
                println!("  {c} * {label}");
            }
        }
        Format::Structured => {
            let combination: Vec<_> = cert
                .combination
                .iter()
                .map(|(label, c)| json!({ "generator": label, "coeff": c.to_string() }))
                .collect();
            println!("{}", json!({ "member": cert.member, "combination": combination }));
        }
    }
}

pub fn print_key_prop(r: &KeyPropCheck, format: Format) {
    match format {
        Format::Text => {
            println!("lhs: {}", r.lhs);
            println!("rhs: {}", r.rhs);
            println!("equal: {}", r.equal);
        }
        Format::Structured => println!(
            "{}",
            json!({ "lhs": { "terms": terms(&r.lhs) }, "rhs": { "terms": terms(&r.rhs) }, "equal": r.equal })
        ),
    }
}

pub fn print_numeric(r: &NumericResult, format: Format) {
    match format {
        Format::Text => {
            println!("value: {:.12}", r.value);
            println!("truncated: {:.12}", r.truncated);
            println!("tail bound: {:.3e}", r.tail_bound);
            println!("M: {}", r.m_used);
        }
        Format::Structured => println!(
            "{}",
            json!({ "value": r.value, "truncated": r.truncated, "tail_bound": r.tail_bound, "M": r.m_used })
        ),
    }
}

pub fn print_csf(r: &CsfNumericReport, format: Format) {
    match format {
        Format::Text => {
            println!("lhs: {:.12}", r.lhs);
            println!("rhs: {:.12}", r.rhs);
            println!("diff: {:.3e}", r.diff);
        }
        Format::Structured => println!(
            "{}",
            json!({ "lhs": r.lhs, "rhs": r.rhs, "diff": r.diff, "tail_bound": r.tail_bound })
        ),
    }
}
