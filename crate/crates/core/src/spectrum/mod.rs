//! Minimal primes, nilradical, finiteness, the graph of infinite-index
//! minimal primes and the classification of finitely generated rings.

mod classify;
mod decompose;
mod ring;

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::groebner::{Domain, IdealPresentation};
use crate::integer::prime_divisors;
use crate::poly::{MonomialOrder, Polynomial};

pub use classify::{
    classify, has_infinite_mult_order, verify_candidates, CandidateReport, Certificate, ClassificationReport,
    ExponentWitness, MultiplicativeOrder, Primality, Reason, SplitCertificate, Verdict,
};
pub use decompose::{field_minimal_primes, DecompositionLimits};
pub use ring::RingPresentation;

/// A minimal prime of a presented ring, as an ideal of `Z[x]` containing
/// the relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeCertificate {
    pub prime: IdealPresentation,
    /// `0` or the prime `p` in the prime.
    pub characteristic: u64,
    pub finite_index: bool,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub primes: Vec<PrimeCertificate>,
    pub nilradical: IdealPresentation,
}

/// Whether `Z[x]/J` is finite, with the generator of `J ∩ Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexTest {
    pub finite: bool,
    pub characteristic: BigInt,
}

pub fn finite_index(j: &IdealPresentation) -> Result<IndexTest> {
    let c = j.contract_integers()?;
    if c.is_zero() {
        return Ok(IndexTest { finite: false, characteristic: c });
    }
    for p in prime_divisors(&c)? {
        if j.mod_prime(&BigInt::from(p))?.dimension_over_field()? > 0 {
            return Ok(IndexTest { finite: false, characteristic: c });
        }
    }
    Ok(IndexTest { finite: true, characteristic: c })
}

/// Primes `p` for which `p` may be a zero divisor modulo the relations.
fn bad_primes(r: &RingPresentation) -> Result<(BigInt, Vec<u64>)> {
    let gb = r.basis()?;
    let c = gb.elements().iter().find_map(|g| g.as_constant()).unwrap_or_else(BigInt::zero);
    let mut primes = BTreeSet::new();
    if c.is_zero() {
        for g in gb.elements() {
            primes.extend(prime_divisors(g.lc())?);
        }
    } else {
        primes.extend(prime_divisors(&c)?);
    }
    Ok((c, primes.into_iter().collect()))
}

/// Product of the primes dividing leading coefficients of a strong basis.
fn leading_coefficient_radical(j: &IdealPresentation) -> Result<BigInt> {
    let gb = j.basis()?;
    let mut primes = BTreeSet::new();
    for g in gb.elements() {
        primes.extend(prime_divisors(g.lc())?);
    }
    Ok(primes.into_iter().map(BigInt::from).product())
}

/// `P ∩ Z[x]` for a prime `P` of `Q[x]` with `P ∩ Z = 0`.
fn contract_rational(p: &IdealPresentation) -> Result<IdealPresentation> {
    let j = p.over_integers();
    let l = leading_coefficient_radical(&j)?;
    let j = if l.is_one() { j } else { j.saturate_element(&Polynomial::constant(j.ctx(), l))? };
    j.reduced()
}

fn lift_modular(p: &IdealPresentation, prime: u64) -> Result<IdealPresentation> {
    let j = p.over_integers().add_generators(&[Polynomial::constant(p.ctx(), prime)])?;
    j.reduced()
}

pub fn minimal_primes(r: &RingPresentation) -> Result<Vec<PrimeCertificate>> {
    Ok(decompose(r, DecompositionLimits::default())?.primes)
}

/// The minimal primes and their intersection, both checked mechanically:
/// every prime contains the relations, no prime contains another, and the
/// intersection lies in the radical of the relations.
pub fn decompose(r: &RingPresentation, limits: DecompositionLimits) -> Result<Decomposition> {
    let rel = r.relations().with_order(MonomialOrder::GrevLex);
    if r.is_zero_ring()? {
        return Err(Error::HypothesisViolation("the zero ring has no prime ideals".into()));
    }
    let (c, bad) = bad_primes(r)?;
    let mut candidates: Vec<PrimeCertificate> = Vec::new();
    for &p in &bad {
        let fp = rel.mod_prime(&BigInt::from(p))?;
        for q in field_minimal_primes(&fp, limits)? {
            let finite = q.dimension_over_field()? == 0;
            candidates.push(PrimeCertificate {
                prime: lift_modular(&q, p)?,
                characteristic: p,
                finite_index: finite,
                provenance: format!("component over F_{p}"),
            });
        }
    }
    if c.is_zero() {
        for q in field_minimal_primes(&rel.over_rationals(), limits)? {
            candidates.push(PrimeCertificate {
                prime: contract_rational(&q)?,
                characteristic: 0,
                finite_index: false,
                provenance: "component over Q".into(),
            });
        }
    }
    let primes = minimal_certificates(candidates)?;
    let nilradical = intersect_all(&rel, primes.iter().map(|p| &p.prime))?;
    for p in &primes {
        if !p.prime.contains_ideal(&rel)? {
            return Err(Error::InvariantViolation("a computed prime misses a relation".into()));
        }
    }
    for g in nilradical.generators() {
        if !rel.radical_member(g)? {
            return Err(Error::InvariantViolation("intersection of primes exceeds the radical".into()));
        }
    }
    Ok(Decomposition { primes, nilradical })
}

fn minimal_certificates(candidates: Vec<PrimeCertificate>) -> Result<Vec<PrimeCertificate>> {
    let mut keep: Vec<PrimeCertificate> = Vec::new();
    'outer: for c in candidates {
        let mut k = 0;
        while k < keep.len() {
            if c.prime.contains_ideal(&keep[k].prime)? {
                continue 'outer;
            }
            if keep[k].prime.contains_ideal(&c.prime)? {
                keep.swap_remove(k);
            } else {
                k += 1;
            }
        }
        keep.push(c);
    }
    keep.sort_by(|a, b| {
        a.characteristic.cmp(&b.characteristic).then_with(|| a.prime.generators().cmp(b.prime.generators()))
    });
    Ok(keep)
}

fn intersect_all<'a>(
    ambient: &IdealPresentation,
    ideals: impl IntoIterator<Item = &'a IdealPresentation>,
) -> Result<IdealPresentation> {
    let mut acc: Option<IdealPresentation> = None;
    for i in ideals {
        acc = Some(match acc {
            None => i.clone(),
            Some(a) => a.intersect(i)?.reduced()?,
        });
    }
    Ok(acc.unwrap_or_else(|| IdealPresentation::unit(ambient.ctx(), Domain::Integers).with_limits(ambient.limits())))
}

/// `⋂` of the minimal primes; the unit ideal for the zero ring.
pub fn nilradical(r: &RingPresentation) -> Result<IdealPresentation> {
    if r.is_zero_ring()? {
        return Ok(IdealPresentation::unit(r.ctx(), Domain::Integers));
    }
    Ok(decompose(r, DecompositionLimits::default())?.nilradical)
}

pub fn is_finite(r: &RingPresentation) -> Result<bool> {
    if r.is_zero_ring()? {
        return Ok(true);
    }
    Ok(minimal_primes(r)?.iter().all(|p| p.finite_index))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeGraph {
    pub vertices: Vec<PrimeCertificate>,
    /// Pairs `(i, j)` with `i < j`.
    pub edges: Vec<(usize, usize)>,
    pub components: Vec<Vec<usize>>,
}

impl PrimeGraph {
    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }
}

/// Vertices are the minimal primes of infinite index; `p` and `q` are
/// adjacent when `p + q` still has infinite index.
pub fn prime_graph_of(primes: &[PrimeCertificate]) -> Result<PrimeGraph> {
    let vertices: Vec<PrimeCertificate> = primes.iter().filter(|p| !p.finite_index).cloned().collect();
    let n = vertices.len();
    let mut edges = Vec::new();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            let sum = vertices[i].prime.sum(&vertices[j].prime)?;
            if !finite_index(&sum)?.finite {
                edges.push((i, j));
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut root_of: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        match root_of[r] {
            Some(c) => components[c].push(i),
            None => {
                root_of[r] = Some(components.len());
                components.push(vec![i]);
            }
        }
    }
    Ok(PrimeGraph { vertices, edges, components })
}

pub fn prime_graph(r: &RingPresentation) -> Result<PrimeGraph> {
    if r.is_zero_ring()? {
        return Ok(PrimeGraph { vertices: Vec::new(), edges: Vec::new(), components: Vec::new() });
    }
    prime_graph_of(&minimal_primes(r)?)
}

/// The generator `d >= 0` of `(I : N) ∩ Z`; `0` means no positive integer
/// kills the nilradical.
pub fn nil_annihilator_exponent_of(r: &RingPresentation, nilradical: &IdealPresentation) -> Result<BigInt> {
    let q = r.relations().quotient(nilradical)?;
    q.contract_integers()
}

pub fn nil_annihilator_exponent(r: &RingPresentation) -> Result<BigInt> {
    nil_annihilator_exponent_of(r, &nilradical(r)?)
}

/// `A / N(A)`.
pub fn reduced_ring(r: &RingPresentation) -> Result<RingPresentation> {
    let n = nilradical(r)?;
    r.quotient(n.generators())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberData {
    pub left: RingPresentation,
    pub right: RingPresentation,
    pub base: RingPresentation,
    pub fiber_product: RingPresentation,
    pub base_finite: bool,
}

/// `R/I`, `R/J`, `R/(I+J)`, `R/(I ∩ J)` and whether `R/(I+J)` is finite.
pub fn fiber_data(r: &RingPresentation, i: &[Polynomial], j: &[Polynomial]) -> Result<FiberData> {
    let ii = r.relations().add_generators(i)?;
    let jj = r.relations().add_generators(j)?;
    let sum = ii.sum(&jj)?;
    let meet = ii.intersect(&jj)?;
    let base_finite = finite_index(&sum)?.finite;
    Ok(FiberData {
        left: r.with_relations(ii)?,
        right: r.with_relations(jj)?,
        base: r.with_relations(sum)?,
        fiber_product: r.with_relations(meet)?,
        base_finite,
    })
}

pub(crate) fn positive_prime_factors(d: &BigInt) -> Result<Vec<u64>> {
    if !d.is_positive() {
        return Ok(Vec::new());
    }
    prime_divisors(d)
}
