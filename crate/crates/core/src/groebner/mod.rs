//! Gröbner bases over `Z` (strong bases), `Q` and `F_p`.
//!
//! All three domains share the integer [`Polynomial`] carrier:
//! over `Q` polynomials are kept primitive (the rational polynomial up to a
//! nonzero scalar), over `F_p` coefficients live in `[0, p)` and basis
//! elements are monic, and over `Z` leading coefficients are positive.

mod dimension;
mod ideal;

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::integer::{ext_gcd, lcm, mod_floor, mod_inverse};
use crate::poly::{Monomial, MonomialOrder, Polynomial};

pub use dimension::{krull_dimension, max_independent_set, standard_monomial_count};
pub use ideal::{exact_quotient, IdealOp, IdealPresentation};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Domain {
    Integers,
    Rationals,
    PrimeField(BigInt),
}

impl Domain {
    pub fn is_field(&self) -> bool {
        !matches!(self, Domain::Integers)
    }

    pub fn prime_field(p: u64) -> Self {
        Domain::PrimeField(BigInt::from(p))
    }

    /// Brings a polynomial into the canonical scaling for this domain.
    pub fn normalize(&self, f: &Polynomial) -> Polynomial {
        if f.is_zero() {
            return f.clone();
        }
        match self {
            Domain::Integers => {
                if f.lc().is_negative() {
                    -f
                } else {
                    f.clone()
                }
            }
            Domain::Rationals => f.primitive_part(),
            Domain::PrimeField(p) => {
                let g = f.reduce_mod(p);
                if g.is_zero() {
                    return g;
                }
                let inv = mod_inverse(g.lc(), p).expect("nonzero residue modulo a prime");
                g.scale(&inv).reduce_mod(p)
            }
        }
    }
}

/// Explicit caps on Buchberger's algorithm. Exceeding either yields
/// [`Error::ResourceCap`], never a partial basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Limits {
    pub max_basis: usize,
    pub max_steps: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_basis: 4000, max_steps: 2_000_000 }
    }
}

struct Budget {
    left: usize,
}

impl Budget {
    fn tick(&mut self) -> Result<()> {
        if self.left == 0 {
            return Err(Error::ResourceCap("reduction step limit".into()));
        }
        self.left -= 1;
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroebnerBasis {
    elements: Vec<Polynomial>,
    order: MonomialOrder,
    domain: Domain,
    reduced: bool,
}

impl GroebnerBasis {
    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<Polynomial> {
        self.elements
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn is_unit(&self) -> bool {
        match self.elements.as_slice() {
            [g] => g.is_one(),
            _ => false,
        }
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|g| g.lm().clone()).collect()
    }

    /// Remainder of `f` on division by the basis (Euclidean coefficient
    /// reduction over `Z`). Over `Q` the remainder is returned primitive.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let f = f.with_order(self.order);
        let mut budget = Budget { left: usize::MAX };
        let r = reduce(&f, &self.elements, &self.domain, &mut budget).expect("unbounded budget");
        match self.domain {
            Domain::Rationals => r.primitive_part(),
            _ => r,
        }
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn contains_all<'a>(&self, fs: impl IntoIterator<Item = &'a Polynomial>) -> bool {
        fs.into_iter().all(|f| self.contains(f))
    }
}

/// Index of the basis element used to reduce the term `c*m`, with the
/// quotient coefficient.
fn find_reducer(c: &BigInt, m: &Monomial, basis: &[Polynomial], domain: &Domain) -> Option<(usize, BigInt)> {
    match domain {
        Domain::Integers => {
            let mut best: Option<usize> = None;
            for (i, g) in basis.iter().enumerate() {
                if g.lm().divides(m) && best.is_none_or(|b| g.lc() < basis[b].lc()) {
                    best = Some(i);
                }
            }
            let i = best?;
            let q = c.div_floor(basis[i].lc());
            (!q.is_zero()).then_some((i, q))
        }
        _ => basis.iter().position(|g| g.lm().divides(m)).map(|i| (i, BigInt::zero())),
    }
}

/// Full reduction of `f` modulo `basis`.
fn reduce(f: &Polynomial, basis: &[Polynomial], domain: &Domain, budget: &mut Budget) -> Result<Polynomial> {
    let ctx = f.ctx();
    let mut rest = match domain {
        Domain::PrimeField(p) => f.reduce_mod(p),
        _ => f.clone(),
    };
    let mut done: Vec<(Monomial, BigInt)> = Vec::new();
    while let Some(lt) = rest.leading_term().cloned() {
        let Some((i, q)) = find_reducer(&lt.coeff, &lt.monomial, basis, domain) else {
            done.push((lt.monomial.clone(), lt.coeff.clone()));
            rest = rest.sub_mul_term(
                &lt.coeff,
                &Monomial::one(ctx.nvars),
                &Polynomial::monomial(ctx, lt.monomial, BigInt::one()),
            );
            continue;
        };
        budget.tick()?;
        let g = &basis[i];
        let shift = lt.monomial.div(g.lm());
        match domain {
            Domain::Integers => {
                rest = rest.sub_mul_term(&q, &shift, g);
            }
            Domain::PrimeField(p) => {
                let inv = mod_inverse(g.lc(), p).expect("unit");
                let c = mod_floor(&(&lt.coeff * inv), p);
                rest = rest.sub_mul_term(&c, &shift, g).reduce_mod(p);
            }
            Domain::Rationals => {
                let l = lt.coeff.gcd(g.lc());
                let mut a = g.lc() / &l;
                let mut b = &lt.coeff / &l;
                if a.is_negative() {
                    a = -a;
                    b = -b;
                }
                rest = rest.scale(&a).sub_mul_term(&b, &shift, g);
                if !a.is_one() {
                    for t in done.iter_mut() {
                        t.1 *= &a;
                    }
                }
                let content = rest.integer_content();
                let content = done.iter().fold(content, |acc, t| acc.gcd(&t.1));
                if !content.is_zero() && !content.is_one() {
                    rest = rest.exact_div_int(&content)?;
                    for t in done.iter_mut() {
                        t.1 /= &content;
                    }
                }
            }
        }
    }
    Ok(Polynomial::from_terms(ctx, done))
}

/// Reduces only the tail of `g` (every term but the leading one).
fn reduce_tail(g: &Polynomial, basis: &[Polynomial], domain: &Domain, budget: &mut Budget) -> Result<Polynomial> {
    let lt = g.leading_term().expect("nonzero").clone();
    let ctx = g.ctx();
    let head = Polynomial::monomial(ctx, lt.monomial.clone(), lt.coeff.clone());
    let tail = g - &head;
    match domain {
        Domain::Rationals => {
            // keep the ratio between head and tail exact
            let mut scaled = Vec::new();
            let r = reduce_tracking_scale(&tail, basis, budget, &mut scaled)?;
            let head = head.scale(&scaled[0]);
            Ok((&head + &r).primitive_part())
        }
        _ => {
            let r = reduce(&tail, basis, domain, budget)?;
            Ok(&head + &r)
        }
    }
}

/// Over `Q`: reduce without taking contents, reporting the overall scale
/// factor applied to the input in `scale[0]`.
fn reduce_tracking_scale(
    f: &Polynomial,
    basis: &[Polynomial],
    budget: &mut Budget,
    scale: &mut Vec<BigInt>,
) -> Result<Polynomial> {
    let ctx = f.ctx();
    let mut rest = f.clone();
    let mut done = Polynomial::zero(ctx);
    let mut total = BigInt::one();
    while let Some(lt) = rest.leading_term().cloned() {
        match basis.iter().position(|g| g.lm().divides(&lt.monomial)) {
            None => {
                let t = Polynomial::monomial(ctx, lt.monomial.clone(), lt.coeff.clone());
                done = &done + &t;
                rest = &rest - &t;
            }
            Some(i) => {
                budget.tick()?;
                let g = &basis[i];
                let shift = lt.monomial.div(g.lm());
                let l = lt.coeff.gcd(g.lc());
                let mut a = g.lc() / &l;
                let mut b = &lt.coeff / &l;
                if a.is_negative() {
                    a = -a;
                    b = -b;
                }
                rest = rest.scale(&a).sub_mul_term(&b, &shift, g);
                done = done.scale(&a);
                total *= &a;
            }
        }
    }
    scale.clear();
    scale.push(total);
    Ok(done)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    age: usize,
}

/// Buchberger's algorithm with degree-then-age pair selection.
pub fn groebner_basis(
    generators: &[Polynomial],
    order: MonomialOrder,
    domain: &Domain,
    limits: Limits,
) -> Result<GroebnerBasis> {
    let mut budget = Budget { left: limits.max_steps };
    let mut basis: Vec<Polynomial> = Vec::new();
    let nvars = generators.first().map(|g| g.nvars());
    for g in generators {
        if Some(g.nvars()) != nvars {
            return Err(Error::ContextMismatch("generators in different rings".into()));
        }
        let g = domain.normalize(&g.with_order(order));
        if !g.is_zero() && !basis.contains(&g) {
            basis.push(g);
        }
    }
    let Some(nvars) = nvars else {
        return Ok(GroebnerBasis { elements: Vec::new(), order, domain: domain.clone(), reduced: true });
    };
    let ctx = crate::poly::Context::new(nvars, order);
    let unit = |domain: &Domain| GroebnerBasis {
        elements: alloc::vec![Polynomial::one(ctx)],
        order,
        domain: domain.clone(),
        reduced: true,
    };
    if basis.iter().any(|g| is_unit_element(g, domain)) {
        return Ok(unit(domain));
    }

    let mut pairs: Vec<Pair> = Vec::new();
    let mut age = 0usize;
    let mut active: Vec<bool> = Vec::new();
    for k in 0..basis.len() {
        active.push(true);
        for i in 0..k {
            pairs.push(Pair { i, j: k, lcm: basis[i].lm().lcm(basis[k].lm()), age });
            age += 1;
        }
    }

    while !pairs.is_empty() {
        let pick = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.lcm.degree().cmp(&b.lcm.degree()).then_with(|| order.cmp(&a.lcm, &b.lcm)).then(a.age.cmp(&b.age))
            })
            .map(|(k, _)| k)
            .unwrap();
        let pair = pairs.swap_remove(pick);
        if !active[pair.i] || !active[pair.j] {
            continue;
        }
        let (f, g) = (&basis[pair.i], &basis[pair.j]);
        let mut candidates: Vec<Polynomial> = Vec::new();
        match domain {
            Domain::Integers => {
                let (a, b) = (f.lc(), g.lc());
                let l = lcm(a, b);
                let sf = pair.lcm.div(f.lm());
                let sg = pair.lcm.div(g.lm());
                let s = f.mul_term(&(&l / a), &sf).sub_mul_term(&(&l / b), &sg, g);
                candidates.push(s);
                if !(b % a).is_zero() && !(a % b).is_zero() {
                    let (_, u, v) = ext_gcd(a, b);
                    let gp = &f.mul_term(&u, &sf) + &g.mul_term(&v, &sg);
                    candidates.push(gp);
                }
            }
            _ => {
                if f.lm().is_coprime(g.lm()) {
                    continue;
                }
                let sf = pair.lcm.div(f.lm());
                let sg = pair.lcm.div(g.lm());
                let s = f.mul_term(g.lc(), &sf).sub_mul_term(f.lc(), &sg, g);
                candidates.push(s);
            }
        }
        for s in candidates {
            let live: Vec<Polynomial> =
                basis.iter().zip(&active).filter(|(_, a)| **a).map(|(g, _)| g.clone()).collect();
            let h = domain.normalize(&reduce(&s, &live, domain, &mut budget)?);
            if h.is_zero() {
                continue;
            }
            if is_unit_element(&h, domain) {
                return Ok(unit(domain));
            }
            if basis.len() >= limits.max_basis {
                return Err(Error::ResourceCap(format!("basis size limit {}", limits.max_basis)));
            }
            let k = basis.len();
            for i in 0..k {
                if active[i] {
                    pairs.push(Pair { i, j: k, lcm: basis[i].lm().lcm(h.lm()), age });
                    age += 1;
                }
            }
            basis.push(h);
            active.push(true);
        }
    }

    let elements = interreduce(basis, domain, &mut budget)?;
    Ok(GroebnerBasis { elements, order, domain: domain.clone(), reduced: true })
}

fn is_unit_element(g: &Polynomial, domain: &Domain) -> bool {
    match g.as_constant() {
        Some(c) if !c.is_zero() => match domain {
            Domain::Integers => c.abs().is_one(),
            _ => true,
        },
        _ => false,
    }
}

/// True when the leading term of `a` divides the leading term of `b` in
/// the domain's sense.
fn lt_divides(a: &Polynomial, b: &Polynomial, domain: &Domain) -> bool {
    a.lm().divides(b.lm())
        && match domain {
            Domain::Integers => (b.lc() % a.lc()).is_zero(),
            _ => true,
        }
}

/// Minimal, tail-reduced, normalized and sorted basis.
fn interreduce(basis: Vec<Polynomial>, domain: &Domain, budget: &mut Budget) -> Result<Vec<Polynomial>> {
    let mut keep: Vec<Polynomial> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let redundant = basis
            .iter()
            .enumerate()
            .any(|(i, h)| i != k && lt_divides(h, g, domain) && (!lt_divides(g, h, domain) || i < k));
        if !redundant {
            keep.push(g.clone());
        }
    }
    let mut out = Vec::with_capacity(keep.len());
    for k in 0..keep.len() {
        let others: Vec<Polynomial> =
            keep.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, g)| g.clone()).collect();
        let g = reduce_tail(&keep[k], &others, domain, budget)?;
        out.push(domain.normalize(&g));
    }
    let order = out.first().map(|g| g.order());
    if let Some(order) = order {
        out.sort_by(|a, b| match order.cmp(a.lm(), b.lm()) {
            Ordering::Equal => a.lc().cmp(b.lc()),
            o => o,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
