//! Minimal primes of ideals over `Q` and `F_p` for the supported class:
//! generators splitting through monomial factors, univariate factorization,
//! or a variable occurring linearly, and zero-dimensional remainders
//! handled through eliminants and primitive elements.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::groebner::{exact_quotient, krull_dimension, standard_monomial_count, Domain, IdealPresentation};
use crate::integer::to_u64;
use crate::poly::{Context, Monomial, MonomialOrder, Polynomial};
use crate::univariate::{factor_mod_p, from_univariate, to_univariate};

/// Caps on the branching search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DecompositionLimits {
    pub max_branches: usize,
    pub primitive_element_tries: usize,
    pub max_field_degree: usize,
}

impl Default for DecompositionLimits {
    fn default() -> Self {
        DecompositionLimits { max_branches: 512, primitive_element_tries: 24, max_field_degree: 4096 }
    }
}

/// Minimal primes of an ideal over a field, each given by its reduced
/// Gröbner basis. The unit ideal has none.
pub fn field_minimal_primes(ideal: &IdealPresentation, limits: DecompositionLimits) -> Result<Vec<IdealPresentation>> {
    if !ideal.domain().is_field() {
        return Err(Error::HypothesisViolation("field decomposition needs a field of coefficients".into()));
    }
    let mut d = Decomposer { limits, branches: 0, rng: ChaCha8Rng::seed_from_u64(0x5eed) };
    let found = d.decompose(&ideal.with_order(MonomialOrder::GrevLex))?;
    minimal_elements(found)
}

/// Drops duplicates and every ideal containing another one.
pub(crate) fn minimal_elements(ideals: Vec<IdealPresentation>) -> Result<Vec<IdealPresentation>> {
    let mut keep: Vec<IdealPresentation> = Vec::new();
    'outer: for p in ideals {
        let mut k = 0;
        while k < keep.len() {
            if p.contains_ideal(&keep[k])? {
                continue 'outer;
            }
            if keep[k].contains_ideal(&p)? {
                keep.swap_remove(k);
            } else {
                k += 1;
            }
        }
        keep.push(p);
    }
    keep.sort_by(|a, b| a.generators().cmp(b.generators()));
    Ok(keep)
}

/// Irreducible factors over the field of a polynomial in the single
/// variable `var`.
pub(crate) fn factor_over_field(f: &Polynomial, var: usize, domain: &Domain) -> Result<Vec<(Polynomial, u32)>> {
    let u = to_univariate(f, var)?;
    let factors = match domain {
        Domain::Rationals => u.factor(),
        Domain::PrimeField(p) => factor_mod_p(&u, to_u64(p)?),
        Domain::Integers => return Err(Error::HypothesisViolation("factorization over a field".into())),
    };
    Ok(factors
        .into_iter()
        .map(|(g, e)| (domain.normalize(&from_univariate(&g, Context::new(f.nvars(), f.order()), var)), e))
        .collect())
}

struct Decomposer {
    limits: DecompositionLimits,
    branches: usize,
    rng: ChaCha8Rng,
}

fn incomplete(reason: &str) -> Error {
    Error::DecompositionIncomplete(reason.into())
}

impl Decomposer {
    fn decompose(&mut self, ideal: &IdealPresentation) -> Result<Vec<IdealPresentation>> {
        self.branches += 1;
        if self.branches > self.limits.max_branches {
            return Err(incomplete("branching limit reached"));
        }
        let ideal = ideal.reduced()?;
        if ideal.generators().iter().any(|g| g.is_constant()) {
            return Ok(Vec::new());
        }
        if let Some(branches) = self.split(&ideal)? {
            return self.recurse(branches);
        }
        self.certify(&ideal)
    }

    fn recurse(&mut self, branches: Vec<IdealPresentation>) -> Result<Vec<IdealPresentation>> {
        let mut out = Vec::new();
        for b in branches {
            out.extend(self.decompose(&b)?);
        }
        Ok(out)
    }

    /// Branches `I + (f_1), ..., I + (f_k)` when some generator is a
    /// product `f_1 ... f_k` of non-units.
    fn split(&mut self, ideal: &IdealPresentation) -> Result<Option<Vec<IdealPresentation>>> {
        let ctx = ideal.ctx();
        for g in ideal.generators() {
            let (m, h) = g.split_monomial_content();
            if m.is_one() || (m.degree() == 1 && h.is_constant()) {
                continue;
            }
            let mut extra: Vec<Polynomial> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(v, _)| Polynomial::var(ctx, v))
                .collect();
            if !h.is_constant() {
                extra.push(h);
            }
            return branch_on(ideal, extra).map(Some);
        }
        for g in ideal.generators() {
            let Some(v) = g.univariate_var() else { continue };
            let factors = factor_over_field(g, v, ideal.domain())?;
            if factors.len() > 1 || factors.first().is_some_and(|f| f.1 > 1) {
                return branch_on(ideal, factors.into_iter().map(|f| f.0).collect()).map(Some);
            }
        }
        for g in ideal.generators() {
            if let Some((a, b)) = linear_split(g, ideal.domain())? {
                return branch_on(ideal, vec![a, b]).map(Some);
            }
        }
        Ok(None)
    }

    fn certify(&mut self, ideal: &IdealPresentation) -> Result<Vec<IdealPresentation>> {
        let n = ideal.ctx().nvars;
        let rest: Vec<Polynomial> = ideal
            .generators()
            .iter()
            .filter(|g| !(g.lm().degree() == 1 && g.lm().pure_power_var().is_some()))
            .cloned()
            .collect();
        if rest.is_empty() {
            return Ok(vec![ideal.clone()]);
        }
        let mut used: Vec<usize> = rest.iter().flat_map(|g| g.variables()).collect();
        used.sort_unstable();
        used.dedup();
        let lms: Vec<Monomial> = rest.iter().map(|g| g.lm().clone()).collect();
        let dim = krull_dimension(&lms, n) - (n - used.len()) as i64;
        if dim == 0 {
            return self.zero_dimensional(ideal, &rest, &used);
        }
        if let [f] = rest.as_slice() {
            // no split found, so a linearly occurring variable has coprime coefficients
            if f.variables().iter().any(|&v| f.degree_in(v) == 1) {
                return Ok(vec![ideal.clone()]);
            }
        }
        Err(incomplete("positive-dimensional component without a supported splitting"))
    }

    /// `rest` is a reduced Gröbner basis of a zero-dimensional ideal of
    /// `K[used]`.
    fn zero_dimensional(
        &mut self,
        ideal: &IdealPresentation,
        rest: &[Polynomial],
        used: &[usize],
    ) -> Result<Vec<IdealPresentation>> {
        let domain = ideal.domain().clone();
        let k = used.len();
        let small = Context::grevlex(k);
        let mut to_small = vec![0usize; ideal.ctx().nvars];
        for (i, &v) in used.iter().enumerate() {
            to_small[v] = i;
        }
        let local: Vec<Polynomial> = rest.iter().map(|g| g.remap(small, &to_small)).collect();
        let j = IdealPresentation::new(small, local.clone(), domain.clone())?.with_limits(ideal.limits());
        let lift = |f: &Polynomial| f.remap(ideal.ctx(), used);

        let mut eliminant_degrees = Vec::with_capacity(k);
        for v in 0..k {
            let e = eliminant(&j, v)?;
            let factors = factor_over_field(&e, v, &domain)?;
            if factors.len() > 1 || factors.first().is_some_and(|f| f.1 > 1) {
                let extra = factors.iter().map(|f| lift(&f.0)).collect();
                return self.recurse(branch_on(ideal, extra)?);
            }
            eliminant_degrees.push(e.degree_in(v) as usize);
        }
        // every eliminant is irreducible, so the ideal is radical
        if k == 1 {
            return Ok(vec![ideal.clone()]);
        }
        let lms: Vec<Monomial> = local.iter().map(|g| g.lm().clone()).collect();
        let degree = standard_monomial_count(&lms, k, self.limits.max_field_degree)
            .ok_or_else(|| incomplete("residue algebra too large"))?;
        if eliminant_degrees.contains(&degree) {
            return Ok(vec![ideal.clone()]);
        }
        for attempt in 0..self.limits.primitive_element_tries {
            let u = self.candidate_element(small, &domain, attempt);
            let phi = minimal_polynomial(&j, &u)?;
            let factors = factor_over_field(&phi, 0, &domain)?;
            if factors.len() > 1 || factors.first().is_some_and(|f| f.1 > 1) {
                let mut extra = Vec::with_capacity(factors.len());
                for (f, _) in &factors {
                    extra.push(lift(&f.compose(core::slice::from_ref(&u), small)?));
                }
                return self.recurse(branch_on(ideal, extra)?);
            }
            if phi.degree_in(0) as usize == degree {
                return Ok(vec![ideal.clone()]);
            }
        }
        Err(incomplete("no primitive element found for a zero-dimensional component"))
    }

    /// Linear forms with growing coefficients first, then random elements.
    fn candidate_element(&mut self, ctx: Context, domain: &Domain, attempt: usize) -> Polynomial {
        let k = ctx.nvars;
        let bound: i64 = match domain {
            Domain::PrimeField(p) => to_u64(p).map(|p| p.min(1 << 20) as i64).unwrap_or(1 << 20),
            _ => 7,
        };
        let mut u = Polynomial::zero(ctx);
        if attempt < 6 {
            let c = attempt as i64 + 1;
            let mut coeff = 1i64;
            for v in 0..k {
                u = &u + &Polynomial::var(ctx, v).scale(&BigInt::from(coeff));
                coeff = (coeff * (c + 1)) % bound.max(2);
            }
        } else {
            for v in 0..k {
                let c: i64 = self.rng.gen_range(0..bound.max(2));
                u = &u + &Polynomial::var(ctx, v).scale(&BigInt::from(c));
                for w in v..k {
                    if self.rng.gen_bool(0.3) {
                        let c: i64 = self.rng.gen_range(1..bound.max(2));
                        let m = &Polynomial::var(ctx, v) * &Polynomial::var(ctx, w);
                        u = &u + &m.scale(&BigInt::from(c));
                    }
                }
            }
        }
        match domain {
            Domain::PrimeField(p) => u.reduce_mod(p),
            _ => u,
        }
    }
}

fn branch_on(ideal: &IdealPresentation, extra: Vec<Polynomial>) -> Result<Vec<IdealPresentation>> {
    extra.into_iter().map(|f| ideal.add_generators(&[f])).collect()
}

/// For a generator of degree one in some variable, `f = a v + b`, a
/// nontrivial common factor of `a` and `b` together with its cofactor.
fn linear_split(g: &Polynomial, domain: &Domain) -> Result<Option<(Polynomial, Polynomial)>> {
    let ctx = g.ctx();
    if g.variables().len() < 2 {
        return Ok(None);
    }
    for v in g.variables() {
        if g.degree_in(v) != 1 {
            continue;
        }
        let mut a_terms = Vec::new();
        let mut b_terms = Vec::new();
        for t in g.terms() {
            let mut e = t.monomial.exponents().to_vec();
            if e[v] == 1 {
                e[v] = 0;
                a_terms.push((Monomial::from_exponents(e), t.coeff.clone()));
            } else {
                b_terms.push((t.monomial.clone(), t.coeff.clone()));
            }
        }
        let a = Polynomial::from_terms(ctx, a_terms);
        let b = Polynomial::from_terms(ctx, b_terms);
        if a.is_constant() || b.is_zero() {
            continue;
        }
        let h = poly_gcd(&a, &b, domain)?;
        if h.is_constant() {
            continue;
        }
        let cofactor = exact_quotient(g, &h, domain)?;
        return Ok(Some((h, cofactor)));
    }
    Ok(None)
}

/// Greatest common divisor over a field through `(a) ∩ (b) = (lcm)`.
pub(crate) fn poly_gcd(a: &Polynomial, b: &Polynomial, domain: &Domain) -> Result<Polynomial> {
    let ctx = a.ctx();
    let ia = IdealPresentation::new(ctx, vec![a.clone()], domain.clone())?;
    let ib = IdealPresentation::new(ctx, vec![b.clone()], domain.clone())?;
    let meet = ia.intersect(&ib)?.reduced()?;
    let [l] = meet.generators() else {
        return Err(Error::InvariantViolation("intersection of principal ideals is not principal".into()));
    };
    let prod = match domain {
        Domain::PrimeField(p) => (a * b).reduce_mod(p),
        _ => a * b,
    };
    Ok(domain.normalize(&exact_quotient(&prod, l, domain)?))
}

/// Generator of `J ∩ K[x_v]`, as a polynomial of the ambient ring.
fn eliminant(j: &IdealPresentation, v: usize) -> Result<Polynomial> {
    let e = j.eliminate(&[v])?.reduced()?;
    match e.generators() {
        [g] => Ok(g.with_order(j.ctx().order)),
        _ => Err(Error::InvariantViolation(format!("eliminant in variable {v} is not principal"))),
    }
}

/// Minimal polynomial of `u` modulo the radical zero-dimensional `J`, as a
/// polynomial in the first variable of a ring with one extra variable.
fn minimal_polynomial(j: &IdealPresentation, u: &Polynomial) -> Result<Polynomial> {
    let k = j.ctx().nvars;
    let big = Context::grevlex(k + 1);
    let shift: Vec<usize> = (1..=k).collect();
    let mut gens: Vec<Polynomial> = j.generators().iter().map(|g| g.remap(big, &shift)).collect();
    gens.push(&Polynomial::var(big, 0) - &u.remap(big, &shift));
    let ext = IdealPresentation::new(big, gens, j.domain().clone())?.with_limits(j.limits());
    let e = eliminant(&ext, 0)?;
    let univariate = Context::grevlex(1);
    Ok(e.remap(univariate, &vec![0usize; k + 1]))
}
