use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{dimension, groebner_basis, Domain, GroebnerBasis, Limits};
use crate::error::{Error, Result};
use crate::integer::mod_inverse;
use crate::poly::{Context, MonomialOrder, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IdealOp {
    Sum,
    Product,
    Intersect,
    Quotient,
    Saturate,
}

/// Finitely many generators of an ideal of `D[x_1..x_n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdealPresentation {
    generators: Vec<Polynomial>,
    domain: Domain,
    ctx: Context,
    limits: Limits,
}

impl IdealPresentation {
    pub fn new(ctx: Context, generators: Vec<Polynomial>, domain: Domain) -> Result<Self> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if g.nvars() != ctx.nvars {
                return Err(Error::ContextMismatch(format!(
                    "generator in {} variables, ambient ring has {}",
                    g.nvars(),
                    ctx.nvars
                )));
            }
            let g = match &domain {
                Domain::PrimeField(p) => g.reduce_mod(p),
                _ => g,
            };
            if !g.is_zero() {
                gens.push(g.with_order(ctx.order));
            }
        }
        Ok(IdealPresentation { generators: gens, domain, ctx, limits: Limits::default() })
    }

    pub fn integers(ctx: Context, generators: Vec<Polynomial>) -> Result<Self> {
        Self::new(ctx, generators, Domain::Integers)
    }

    pub fn zero(ctx: Context, domain: Domain) -> Self {
        IdealPresentation { generators: Vec::new(), domain, ctx, limits: Limits::default() }
    }

    pub fn unit(ctx: Context, domain: Domain) -> Self {
        IdealPresentation { generators: alloc::vec![Polynomial::one(ctx)], domain, ctx, limits: Limits::default() }
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn ctx(&self) -> Context {
        self.ctx
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    fn derived(&self, generators: Vec<Polynomial>) -> Result<Self> {
        Ok(Self::new(self.ctx, generators, self.domain.clone())?.with_limits(self.limits))
    }

    fn check_compatible(&self, other: &IdealPresentation) -> Result<()> {
        if self.ctx.nvars != other.ctx.nvars || self.domain != other.domain {
            return Err(Error::ContextMismatch("ideals in different rings".into()));
        }
        Ok(())
    }

    /// Strong Gröbner basis over `Z`, reduced Gröbner basis over a field.
    pub fn groebner(&self, order: MonomialOrder) -> Result<GroebnerBasis> {
        groebner_basis(&self.generators, order, &self.domain, self.limits)
    }

    /// Gröbner basis in the ambient order.
    pub fn basis(&self) -> Result<GroebnerBasis> {
        self.groebner(self.ctx.order)
    }

    /// The same ideal generated by its reduced basis.
    pub fn reduced(&self) -> Result<Self> {
        let gb = self.basis()?;
        self.derived(gb.into_elements())
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.basis()?.is_unit())
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn member(&self, f: &Polynomial) -> Result<bool> {
        if f.nvars() != self.ctx.nvars {
            return Err(Error::ContextMismatch("polynomial outside ambient ring".into()));
        }
        Ok(self.basis()?.contains(f))
    }

    pub fn contains_ideal(&self, other: &IdealPresentation) -> Result<bool> {
        self.check_compatible(other)?;
        let gb = self.basis()?;
        Ok(gb.contains_all(&other.generators))
    }

    pub fn same_ideal(&self, other: &IdealPresentation) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    /// `f^n` lies in the ideal for some `n`; decided through
    /// `1 in I + (1 - y f)` with a fresh variable `y`.
    pub fn radical_member(&self, f: &Polynomial) -> Result<bool> {
        if f.nvars() != self.ctx.nvars {
            return Err(Error::ContextMismatch("polynomial outside ambient ring".into()));
        }
        let n = self.ctx.nvars;
        let big = Context::new(n + 1, MonomialOrder::GrevLex);
        let mut gens: Vec<Polynomial> = self.generators.iter().map(|g| g.extend(big)).collect();
        let y = Polynomial::var(big, n);
        gens.push(&Polynomial::one(big) - &(&y * &f.extend(big)));
        Ok(groebner_basis(&gens, big.order, &self.domain, self.limits)?.is_unit())
    }

    pub fn sum(&self, other: &IdealPresentation) -> Result<Self> {
        self.check_compatible(other)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().map(|g| g.with_order(self.ctx.order)));
        self.derived(gens)
    }

    /// Adds single elements to the generators.
    pub fn add_generators(&self, extra: &[Polynomial]) -> Result<Self> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().map(|g| g.with_order(self.ctx.order)));
        self.derived(gens)
    }

    pub fn product(&self, other: &IdealPresentation) -> Result<Self> {
        self.check_compatible(other)?;
        let mut gens = Vec::new();
        for f in &self.generators {
            for g in &other.generators {
                gens.push(f * &g.with_order(self.ctx.order));
            }
        }
        self.derived(gens)
    }

    /// `I ∩ J` as the `t`-free part of `t I + (1 - t) J`.
    pub fn intersect(&self, other: &IdealPresentation) -> Result<Self> {
        self.check_compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ctx, self.domain.clone()).with_limits(self.limits));
        }
        let n = self.ctx.nvars;
        let big = Context::new(n + 1, MonomialOrder::Block(1));
        let shift: Vec<usize> = (1..=n).collect();
        let t = Polynomial::var(big, 0);
        let one_minus_t = &Polynomial::one(big) - &t;
        let mut gens = Vec::new();
        for f in &self.generators {
            gens.push(&t * &f.remap(big, &shift));
        }
        for g in &other.generators {
            gens.push(&one_minus_t * &g.remap(big, &shift));
        }
        let gb = groebner_basis(&gens, big.order, &self.domain, self.limits)?;
        let back = self.drop_leading(&gb, 1);
        self.derived(back)
    }

    /// Basis elements free of the first `k` variables of an extended ring,
    /// moved back to the ambient ring.
    fn drop_leading(&self, gb: &GroebnerBasis, k: usize) -> Vec<Polynomial> {
        let n = self.ctx.nvars;
        let mut mapping: Vec<usize> = (0..k).map(|_| 0).collect();
        mapping.extend(0..n);
        gb.elements()
            .iter()
            .filter(|g| g.variables().iter().all(|&v| v >= k))
            .map(|g| g.remap(self.ctx, &mapping))
            .collect()
    }

    /// `I : (g)`.
    pub fn quotient_element(&self, g: &Polynomial) -> Result<Self> {
        if g.nvars() != self.ctx.nvars {
            return Err(Error::ContextMismatch("polynomial outside ambient ring".into()));
        }
        let g = g.with_order(self.ctx.order);
        let g = match &self.domain {
            Domain::PrimeField(p) => g.reduce_mod(p),
            _ => g,
        };
        if g.is_zero() || self.member(&g)? {
            return Ok(Self::unit(self.ctx, self.domain.clone()).with_limits(self.limits));
        }
        let principal = self.derived(alloc::vec![g.clone()])?;
        let meet = self.intersect(&principal)?;
        let mut gens = Vec::with_capacity(meet.generators.len());
        for h in &meet.generators {
            gens.push(exact_quotient(h, &g, &self.domain)?);
        }
        self.derived(gens)
    }

    /// `I : J`, the intersection of `I : (g)` over generators `g` of `J`.
    pub fn quotient(&self, other: &IdealPresentation) -> Result<Self> {
        self.check_compatible(other)?;
        let mut acc = Self::unit(self.ctx, self.domain.clone()).with_limits(self.limits);
        for g in &other.generators {
            let q = self.quotient_element(g)?;
            acc = if acc.generators.len() == 1 && acc.generators[0].is_one() { q } else { acc.intersect(&q)? };
        }
        Ok(acc)
    }

    /// `I : J^∞` by iterating quotients until the ideal stops growing.
    pub fn saturate(&self, other: &IdealPresentation) -> Result<Self> {
        let mut current = self.reduced()?;
        loop {
            let next = current.quotient(other)?.reduced()?;
            if current.contains_ideal(&next)? {
                return Ok(current);
            }
            current = next;
        }
    }

    /// `I : g^∞ = (I + (1 - y g)) ∩ D[x]`.
    pub fn saturate_element(&self, g: &Polynomial) -> Result<Self> {
        let n = self.ctx.nvars;
        let big = Context::new(n + 1, MonomialOrder::Block(1));
        let shift: Vec<usize> = (1..=n).collect();
        let y = Polynomial::var(big, 0);
        let mut gens: Vec<Polynomial> = self.generators.iter().map(|f| f.remap(big, &shift)).collect();
        gens.push(&Polynomial::one(big) - &(&y * &g.remap(big, &shift)));
        let gb = groebner_basis(&gens, big.order, &self.domain, self.limits)?;
        let back = self.drop_leading(&gb, 1);
        self.derived(back)
    }

    pub fn apply(&self, op: IdealOp, other: &IdealPresentation) -> Result<Self> {
        match op {
            IdealOp::Sum => self.sum(other),
            IdealOp::Product => self.product(other),
            IdealOp::Intersect => self.intersect(other),
            IdealOp::Quotient => self.quotient(other),
            IdealOp::Saturate => self.saturate(other),
        }
    }

    /// `I ∩ D[x_keep]`; the result stays in the ambient ring.
    pub fn eliminate(&self, keep: &[usize]) -> Result<Self> {
        let n = self.ctx.nvars;
        if let Some(&v) = keep.iter().find(|&&v| v >= n) {
            return Err(Error::ContextMismatch(format!("variable index {v} out of range")));
        }
        let gone: Vec<usize> = (0..n).filter(|v| !keep.contains(v)).collect();
        let kept: Vec<usize> = (0..n).filter(|v| keep.contains(v)).collect();
        if gone.is_empty() {
            return Ok(self.clone());
        }
        let k = gone.len();
        let order = if kept.is_empty() { MonomialOrder::GrevLex } else { MonomialOrder::Block(k) };
        let big = Context::new(n, order);
        // new position of each ambient variable
        let mut to_big = alloc::vec![0usize; n];
        for (pos, &v) in gone.iter().chain(kept.iter()).enumerate() {
            to_big[v] = pos;
        }
        let gens: Vec<Polynomial> = self.generators.iter().map(|g| g.remap(big, &to_big)).collect();
        let gb = groebner_basis(&gens, order, &self.domain, self.limits)?;
        let from_big: Vec<usize> = gone.iter().chain(kept.iter()).copied().collect();
        let back: Vec<Polynomial> = gb
            .elements()
            .iter()
            .filter(|g| g.variables().iter().all(|&v| v >= k))
            .map(|g| g.remap(self.ctx, &from_big))
            .collect();
        self.derived(back)
    }

    /// The non-negative generator of `I ∩ Z`.
    pub fn contract_integers(&self) -> Result<BigInt> {
        if self.domain != Domain::Integers {
            return Err(Error::HypothesisViolation("contraction to Z needs an ideal over Z".into()));
        }
        let gb = self.basis()?;
        Ok(gb.elements().iter().find_map(|g| g.as_constant()).unwrap_or_else(BigInt::zero))
    }

    /// Krull dimension of the quotient by an ideal over a field; `-1` for
    /// the unit ideal.
    pub fn dimension_over_field(&self) -> Result<i64> {
        if !self.domain.is_field() {
            return Err(Error::HypothesisViolation("dimension count needs a field of coefficients".into()));
        }
        let gb = self.basis()?;
        Ok(dimension::krull_dimension(&gb.leading_monomials(), self.ctx.nvars))
    }

    /// Image in `F_p[x]`.
    pub fn mod_prime(&self, p: &BigInt) -> Result<Self> {
        Ok(Self::new(self.ctx, self.generators.clone(), Domain::PrimeField(p.clone()))?.with_limits(self.limits))
    }

    /// Extension to `Q[x]`.
    pub fn over_rationals(&self) -> Self {
        IdealPresentation { domain: Domain::Rationals, ..self.clone() }
    }

    /// The same generators read over `Z` (only meaningful for `Q`).
    pub fn over_integers(&self) -> Self {
        IdealPresentation { domain: Domain::Integers, ..self.clone() }
    }

    pub fn with_order(&self, order: MonomialOrder) -> Self {
        let ctx = Context::new(self.ctx.nvars, order);
        IdealPresentation {
            generators: self.generators.iter().map(|g| g.with_order(order)).collect(),
            ctx,
            ..self.clone()
        }
    }
}

/// `h / g` in `D[x]`; fails unless `g` divides `h`.
pub fn exact_quotient(h: &Polynomial, g: &Polynomial, domain: &Domain) -> Result<Polynomial> {
    match domain {
        Domain::Integers => h.div_exact(g),
        Domain::Rationals => h.div_exact(&g.primitive_part()),
        Domain::PrimeField(p) => {
            let inv = mod_inverse(g.lc(), p).ok_or(Error::DivisionByZero)?;
            let mut rem = h.reduce_mod(p);
            let mut quot = Vec::new();
            while let Some(lt) = rem.leading_term().cloned() {
                if !g.lm().divides(&lt.monomial) {
                    return Err(Error::InvariantViolation("inexact division modulo p".into()));
                }
                let c = (&lt.coeff * &inv) % p;
                let m = lt.monomial.div(g.lm());
                rem = rem.sub_mul_term(&c, &m, g).reduce_mod(p);
                quot.push((m, c));
            }
            Ok(Polynomial::from_terms(h.ctx(), quot))
        }
    }
}
