use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{
    decompose, field_minimal_primes, finite_index, intersect_all, nil_annihilator_exponent_of, positive_prime_factors,
    prime_graph_of, DecompositionLimits, PrimeCertificate, PrimeGraph, RingPresentation,
};
use crate::error::{Error, Result};
use crate::groebner::{Domain, IdealPresentation};
use crate::integer::prime_divisors;
use crate::poly::{MonomialOrder, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    BiinterpretableWithZ,
    NotBiinterpretable,
    UndecidedDecompositionIncomplete,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::BiinterpretableWithZ => "BIINTERPRETABLE_WITH_Z",
            Verdict::NotBiinterpretable => "NOT_BIINTERPRETABLE",
            Verdict::UndecidedDecompositionIncomplete => "UNDECIDED_DECOMPOSITION_INCOMPLETE",
        }
    }
}

/// The first of the three conditions that fails, or `AllConditionsHold`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reason {
    ZeroRing,
    Finite,
    Disconnected,
    NoAnnihilatorExponent,
    AllConditionsHold,
}

impl Reason {
    pub fn as_str(&self) -> &'static str {
        match self {
            Reason::ZeroRing => "zero_ring",
            Reason::Finite => "finite",
            Reason::Disconnected => "disconnected",
            Reason::NoAnnihilatorExponent => "d=0",
            Reason::AllConditionsHold => "infinite, connected, d>=1",
        }
    }
}

/// A partition `(C, V \ C)` of the vertices with `I = ⋂C`, `J = ⋂(V \ C)`
/// and the positive generator of `(I + J) ∩ Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitCertificate {
    pub component: Vec<usize>,
    pub complement: Vec<usize>,
    pub left: IdealPresentation,
    pub right: IdealPresentation,
    pub witness: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentWitness {
    pub d: BigInt,
    /// For each prime `q | d`, a nilradical generator `n` with
    /// `(d/q) n` outside the relations.
    pub minimality: Vec<(u64, Polynomial)>,
    /// For `d = 0`, a nilradical generator killed by no positive integer.
    pub unannihilated: Option<Polynomial>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub reason: Reason,
    pub split: Option<SplitCertificate>,
    pub exponent: Option<ExponentWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub is_zero_ring: bool,
    pub is_finite: bool,
    pub minimal_primes: Vec<PrimeCertificate>,
    pub nilradical: IdealPresentation,
    pub annihilator_exponent: BigInt,
    pub graph: PrimeGraph,
    pub connected: bool,
    pub verdict: Verdict,
    pub certificate: Certificate,
}

pub fn classify(r: &RingPresentation, limits: DecompositionLimits) -> Result<ClassificationReport> {
    let ctx = r.ctx();
    if r.is_zero_ring()? {
        let graph = PrimeGraph { vertices: Vec::new(), edges: Vec::new(), components: Vec::new() };
        return Ok(ClassificationReport {
            is_zero_ring: true,
            is_finite: true,
            minimal_primes: Vec::new(),
            nilradical: IdealPresentation::unit(ctx, Domain::Integers),
            annihilator_exponent: BigInt::one(),
            graph,
            connected: false,
            verdict: Verdict::NotBiinterpretable,
            certificate: Certificate { reason: Reason::ZeroRing, split: None, exponent: None },
        });
    }
    let dec = decompose(r, limits)?;
    let graph = prime_graph_of(&dec.primes)?;
    let is_finite = graph.vertices.is_empty();
    let connected = !is_finite && graph.is_connected();
    let d = nil_annihilator_exponent_of(r, &dec.nilradical)?;
    let exponent = exponent_witness(r, &dec.nilradical, &d)?;
    let split = if !is_finite && !connected { Some(split_certificate(r, &graph)?) } else { None };
    let reason = if is_finite {
        Reason::Finite
    } else if !connected {
        Reason::Disconnected
    } else if d.is_zero() {
        Reason::NoAnnihilatorExponent
    } else {
        Reason::AllConditionsHold
    };
    let verdict =
        if reason == Reason::AllConditionsHold { Verdict::BiinterpretableWithZ } else { Verdict::NotBiinterpretable };
    Ok(ClassificationReport {
        is_zero_ring: false,
        is_finite,
        minimal_primes: dec.primes,
        nilradical: dec.nilradical,
        annihilator_exponent: d,
        graph,
        connected,
        verdict,
        certificate: Certificate { reason, split, exponent: Some(exponent) },
    })
}

fn split_certificate(r: &RingPresentation, graph: &PrimeGraph) -> Result<SplitCertificate> {
    let component = graph.components[0].clone();
    let complement: Vec<usize> = (0..graph.vertices.len()).filter(|i| !component.contains(i)).collect();
    let rel = r.relations();
    let left = intersect_all(rel, component.iter().map(|&i| &graph.vertices[i].prime))?;
    let right = intersect_all(rel, complement.iter().map(|&i| &graph.vertices[i].prime))?;
    let test = finite_index(&left.sum(&right)?)?;
    if !test.finite || test.characteristic.is_zero() {
        return Err(Error::InvariantViolation("components of the prime graph do not split the ring".into()));
    }
    Ok(SplitCertificate { component, complement, left, right, witness: test.characteristic })
}

fn exponent_witness(r: &RingPresentation, nil: &IdealPresentation, d: &BigInt) -> Result<ExponentWitness> {
    let rel = r.relations();
    if d.is_zero() {
        for n in nil.generators() {
            if rel.quotient_element(n)?.contract_integers()?.is_zero() {
                return Ok(ExponentWitness { d: d.clone(), minimality: Vec::new(), unannihilated: Some(n.clone()) });
            }
        }
        return Err(Error::InvariantViolation("no nilradical generator witnesses d = 0".into()));
    }
    let gb = r.basis()?;
    for n in nil.generators() {
        if !gb.contains(&n.scale(d)) {
            return Err(Error::InvariantViolation("d does not annihilate the nilradical".into()));
        }
    }
    let mut minimality = Vec::new();
    for q in positive_prime_factors(d)? {
        let smaller = d / BigInt::from(q);
        let witness = nil.generators().iter().find(|n| !gb.contains(&n.scale(&smaller)));
        match witness {
            Some(n) => minimality.push((q, n.clone())),
            None => return Err(Error::InvariantViolation("annihilator exponent is not minimal".into())),
        }
    }
    Ok(ExponentWitness { d: d.clone(), minimality, unannihilated: None })
}

/// Outcome of the bounded search for the multiplicative order of `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultiplicativeOrder {
    /// `a^m = a^n` with `m < n`.
    Finite { m: u32, n: u32 },
    /// `a` lies outside the non-maximal prime and is no unit modulo it.
    Infinite { prime: IdealPresentation },
}

impl MultiplicativeOrder {
    pub fn is_infinite(&self) -> bool {
        matches!(self, MultiplicativeOrder::Infinite { .. })
    }
}

pub fn has_infinite_mult_order(
    r: &RingPresentation,
    a: &Polynomial,
    bound: u32,
    limits: DecompositionLimits,
) -> Result<MultiplicativeOrder> {
    let mut seen: BTreeMap<Polynomial, u32> = BTreeMap::new();
    let base = r.normal_form(a)?;
    let mut power = base.clone();
    for n in 1..=bound {
        if let Some(&m) = seen.get(&power) {
            return Ok(MultiplicativeOrder::Finite { m, n });
        }
        seen.insert(power.clone(), n);
        power = r.mul(&power, &base)?;
    }
    if r.is_zero_ring()? {
        return Ok(MultiplicativeOrder::Finite { m: 1, n: 2 });
    }
    let primes = decompose(r, limits)?.primes;
    for p in primes.iter().filter(|p| !p.finite_index) {
        if p.prime.member(&base)? {
            continue;
        }
        if !p.prime.add_generators(core::slice::from_ref(&base))?.is_unit()? {
            return Ok(MultiplicativeOrder::Infinite { prime: p.prime.clone() });
        }
    }
    Err(Error::Inconclusive("no repetition among the powers and no witnessing prime".into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Primality {
    Verified,
    NotPrime,
    Unverified,
}

impl Primality {
    pub fn as_str(&self) -> &'static str {
        match self {
            Primality::Verified => "verified",
            Primality::NotPrime => "not_prime",
            Primality::Unverified => "unverified",
        }
    }
}

/// Checks of a user-supplied list of primes against the relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateReport {
    pub contains_relations: bool,
    pub radical_equal: bool,
    pub incomparable: bool,
    pub primality: Vec<Primality>,
}

impl CandidateReport {
    pub fn accepted(&self) -> bool {
        self.contains_relations
            && self.radical_equal
            && self.incomparable
            && self.primality.iter().all(|p| *p != Primality::NotPrime)
    }
}

pub fn verify_candidates(
    r: &RingPresentation,
    candidates: &[IdealPresentation],
    limits: DecompositionLimits,
) -> Result<CandidateReport> {
    let rel = r.relations();
    let mut contains_relations = true;
    for c in candidates {
        contains_relations &= c.contains_ideal(rel)?;
    }
    let meet = intersect_all(rel, candidates.iter())?;
    let mut radical_equal = true;
    for g in meet.generators() {
        radical_equal &= rel.radical_member(g)?;
    }
    let mut incomparable = true;
    for (i, a) in candidates.iter().enumerate() {
        for b in &candidates[i + 1..] {
            incomparable &= !a.contains_ideal(b)? && !b.contains_ideal(a)?;
        }
    }
    let mut primality = Vec::with_capacity(candidates.len());
    for c in candidates {
        primality.push(match candidate_primality(c, limits) {
            Ok(p) => p,
            Err(e) if e.is_refusal() => Primality::Unverified,
            Err(e) => return Err(e),
        });
    }
    Ok(CandidateReport { contains_relations, radical_equal, incomparable, primality })
}

fn candidate_primality(c: &IdealPresentation, limits: DecompositionLimits) -> Result<Primality> {
    let c = c.with_order(MonomialOrder::GrevLex);
    if c.is_unit()? {
        return Ok(Primality::NotPrime);
    }
    let k = c.contract_integers()?;
    let over_field = if k.is_zero() {
        c.over_rationals()
    } else {
        let ps = prime_divisors(&k)?;
        if ps.len() != 1 || k != BigInt::from(ps[0]) {
            return Ok(Primality::NotPrime);
        }
        c.mod_prime(&k)?
    };
    let primes = field_minimal_primes(&over_field, limits)?;
    let prime = match primes.as_slice() {
        [p] => p.same_ideal(&over_field)?,
        _ => false,
    };
    if !prime {
        return Ok(Primality::NotPrime);
    }
    if k.is_zero() {
        // the contraction of the rational prime must give back the candidate
        let contracted = super::contract_rational(&over_field.reduced()?)?;
        if !c.contains_ideal(&contracted)? {
            return Ok(Primality::NotPrime);
        }
    }
    Ok(Primality::Verified)
}
