//! JSON renderings of the analysis results. Keys are sorted, polynomials
//! appear in canonical text form, and nothing depends on timing or hashing,
//! so equal inputs give byte-identical output.

use fgring_core::fol::Formula;
use fgring_core::groebner::IdealPresentation;
use fgring_core::spectrum::{
    CandidateReport, ClassificationReport, IndexTest, PrimeCertificate, PrimeGraph, RingPresentation,
};
use fgring_core::witt::{WittPolynomialTable, WittVector};
use fgring_core::{Error, Polynomial};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::parse::print_presentation;

pub const ASSUMPTIONS: [&str; 2] = [
    "the ring is noetherian, so it has finitely many minimal primes",
    "minimal primes are computed within the supported decomposition class; inputs outside it are refused",
];

pub fn integer(b: &BigInt) -> Value {
    match b.to_i64() {
        Some(v) => json!(v),
        None => json!(b.to_string()),
    }
}

pub fn polys(r: &RingPresentation, ps: &[Polynomial]) -> Value {
    json!(ps.iter().map(|p| r.format(p)).collect::<Vec<_>>())
}

pub fn ideal(r: &RingPresentation, i: &IdealPresentation) -> Value {
    polys(r, i.generators())
}

pub fn prime(r: &RingPresentation, p: &PrimeCertificate) -> Value {
    json!({
        "generators": ideal(r, &p.prime),
        "characteristic": p.characteristic,
        "finite_index": p.finite_index,
        "provenance": p.provenance,
    })
}

pub fn graph(r: &RingPresentation, g: &PrimeGraph) -> Value {
    json!({
        "vertices": g.vertices.iter().map(|p| ideal(r, &p.prime)).collect::<Vec<_>>(),
        "edges": g.edges.iter().map(|&(i, j)| json!([i, j])).collect::<Vec<_>>(),
        "components": g.components,
        "connected": g.is_connected(),
    })
}

pub fn classification(r: &RingPresentation, rep: &ClassificationReport) -> Value {
    let cert = &rep.certificate;
    let split = cert.split.as_ref().map(|s| {
        json!({
            "component": s.component,
            "complement": s.complement,
            "left": ideal(r, &s.left),
            "right": ideal(r, &s.right),
            "witness": integer(&s.witness),
        })
    });
    let exponent = cert.exponent.as_ref().map(|e| {
        json!({
            "d": integer(&e.d),
            "minimality": e.minimality.iter().map(|(q, n)| json!({"prime": q, "element": r.format(n)})).collect::<Vec<_>>(),
            "unannihilated": e.unannihilated.as_ref().map(|n| r.format(n)),
        })
    });
    json!({
        "input": print_presentation(r),
        "verdict": rep.verdict.as_str(),
        "reason": cert.reason.as_str(),
        "zero_ring": rep.is_zero_ring,
        "conditions": {
            "finite": rep.is_finite,
            "connected": rep.connected,
            "d": integer(&rep.annihilator_exponent),
        },
        "minimal_primes": rep.minimal_primes.iter().map(|p| prime(r, p)).collect::<Vec<_>>(),
        "nilradical": ideal(r, &rep.nilradical),
        "graph": graph(r, &rep.graph),
        "certificates": {"split": split, "exponent": exponent},
        "assumptions": ASSUMPTIONS,
    })
}

pub fn candidates(rep: &CandidateReport) -> Value {
    json!({
        "accepted": rep.accepted(),
        "contains_relations": rep.contains_relations,
        "radical_equal": rep.radical_equal,
        "incomparable": rep.incomparable,
        "primality": rep.primality.iter().map(|p| p.as_str()).collect::<Vec<_>>(),
    })
}

pub fn index_test(r: &RingPresentation, t: &IndexTest) -> Value {
    json!({
        "input": print_presentation(r),
        "finite": t.finite,
        "characteristic": integer(&t.characteristic),
    })
}

fn by_divisor(t: &WittPolynomialTable, ps: &[Polynomial], names: &[String]) -> Value {
    let mut m = Map::new();
    for (j, p) in t.divisors().iter().zip(ps) {
        m.insert(j.to_string(), json!(p.to_text(names)));
    }
    Value::Object(m)
}

pub fn witt_table(t: &WittPolynomialTable) -> Value {
    use fgring_core::witt::WittOp;
    let names = t.names();
    let ghost: Vec<Polynomial> = t.divisors().iter().map(|&j| t.ghost(j).expect("divisor").clone()).collect();
    json!({
        "d": t.d(),
        "divisors": t.divisors(),
        "variables": names,
        "S": by_divisor(t, t.polynomials(WittOp::Add), &names),
        "M": by_divisor(t, t.polynomials(WittOp::Mul), &names),
        "N": by_divisor(t, t.polynomials(WittOp::Neg), &names),
        "ghost": by_divisor(t, &ghost, &names),
    })
}

pub fn witt_vector(r: &RingPresentation, t: &WittPolynomialTable, v: &WittVector) -> Value {
    let mut m = Map::new();
    for (j, c) in t.divisors().iter().zip(v.components()) {
        m.insert(j.to_string(), json!(r.format(c)));
    }
    Value::Object(m)
}

pub fn formula(name: &str, n: Option<usize>, free: &[String], f: &Formula) -> Value {
    json!({
        "formula": name,
        "n": n,
        "free": free,
        "sexpr": f.to_sexpr(),
    })
}

/// Exit status for an error: 2 for refusals, 3 for internal invariant
/// violations and 1 for everything the caller can fix.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_refusal() {
        2
    } else if matches!(e, Error::InvariantViolation(_)) {
        3
    } else {
        1
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::DecompositionIncomplete(_) => "DECOMPOSITION_INCOMPLETE",
        Error::ResourceCap(_) => "RESOURCE_CAP",
        Error::CapExceeded(_) => "CAP_EXCEEDED",
        Error::Inconclusive(_) => "INCONCLUSIVE",
        Error::InvariantViolation(_) => "INVARIANT_VIOLATION",
        Error::HypothesisViolation(_) => "HYPOTHESIS_VIOLATION",
        Error::NotInvertible(_) => "NOT_INVERTIBLE",
        _ => "INVALID_INPUT",
    }
}

pub fn error(e: &Error) -> Value {
    json!({"error": {"kind": error_kind(e), "message": e.to_string()}})
}
