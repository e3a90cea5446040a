use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cell::OnceCell;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::groebner::{GroebnerBasis, IdealPresentation, Limits};
use crate::poly::{default_names, Context, MonomialOrder, Polynomial};

/// The ring `Z[x_1..x_n]/I`.
#[derive(Clone, Debug)]
pub struct RingPresentation {
    names: Vec<String>,
    relations: IdealPresentation,
    basis: OnceCell<GroebnerBasis>,
}

impl PartialEq for RingPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.relations == other.relations
    }
}

impl Eq for RingPresentation {}

impl RingPresentation {
    pub fn new(names: Vec<String>, relations: Vec<Polynomial>) -> Result<Self> {
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() {
                return Err(Error::HypothesisViolation("empty variable name".into()));
            }
            if names[..i].contains(n) {
                return Err(Error::HypothesisViolation(format!("duplicate variable name {n}")));
            }
        }
        let ctx = Context::grevlex(names.len());
        let relations = IdealPresentation::integers(ctx, relations)?;
        Ok(RingPresentation { names, relations, basis: OnceCell::new() })
    }

    /// `Z[x_1..x_n]` with default variable names.
    pub fn polynomial_ring(nvars: usize) -> Self {
        Self::new(default_names(nvars), Vec::new()).expect("default names are valid")
    }

    pub fn integers() -> Self {
        Self::polynomial_ring(0)
    }

    /// `Z/m`.
    pub fn integers_mod(m: impl Into<BigInt>) -> Self {
        let ctx = Context::grevlex(0);
        Self::new(Vec::new(), alloc::vec![Polynomial::constant(ctx, m)]).expect("no variables")
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.relations = self.relations.with_limits(limits);
        self.basis = OnceCell::new();
        self
    }

    pub fn limits(&self) -> Limits {
        self.relations.limits()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn ctx(&self) -> Context {
        self.relations.ctx()
    }

    pub fn relations(&self) -> &IdealPresentation {
        &self.relations
    }

    pub fn relation_generators(&self) -> &[Polynomial] {
        self.relations.generators()
    }

    /// Strong Gröbner basis of the relations, computed once.
    pub fn basis(&self) -> Result<&GroebnerBasis> {
        if let Some(gb) = self.basis.get() {
            return Ok(gb);
        }
        let gb = self.relations.basis()?;
        Ok(self.basis.get_or_init(|| gb))
    }

    pub fn is_zero_ring(&self) -> Result<bool> {
        Ok(self.basis()?.is_unit())
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(self.ctx(), i)
    }

    pub fn constant(&self, c: impl Into<BigInt>) -> Polynomial {
        Polynomial::constant(self.ctx(), c)
    }

    /// Canonical representative of the class of `f`.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.nvars() != self.nvars() {
            return Err(Error::ContextMismatch("element outside the ring".into()));
        }
        Ok(self.basis()?.normal_form(&f.with_order(self.ctx().order)))
    }

    pub fn is_zero(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn equal(&self, a: &Polynomial, b: &Polynomial) -> Result<bool> {
        self.is_zero(&a.try_sub(b)?)
    }

    pub fn add(&self, a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
        self.normal_form(&a.try_add(b)?)
    }

    pub fn sub(&self, a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
        self.normal_form(&a.try_sub(b)?)
    }

    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
        self.normal_form(&a.try_mul(b)?)
    }

    pub fn neg(&self, a: &Polynomial) -> Result<Polynomial> {
        self.normal_form(&-a)
    }

    pub fn pow(&self, a: &Polynomial, e: u32) -> Result<Polynomial> {
        let mut acc = self.normal_form(&Polynomial::one(self.ctx()))?;
        let mut base = self.normal_form(a)?;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// The inverse of `a` when `a` is a unit.
    pub fn inverse(&self, a: &Polynomial) -> Result<Option<Polynomial>> {
        let n = self.nvars();
        let big = Context::new(n + 1, MonomialOrder::Block(1));
        let shift: Vec<usize> = (1..=n).collect();
        let y = Polynomial::var(big, 0);
        let mut gens: Vec<Polynomial> = self.relation_generators().iter().map(|g| g.remap(big, &shift)).collect();
        gens.push(&(&y * &a.remap(big, &shift)) - &Polynomial::one(big));
        let ext = IdealPresentation::integers(big, gens)?.with_limits(self.limits());
        let gb = ext.basis()?;
        if gb.is_unit() {
            return Ok(if self.is_zero_ring()? { Some(Polynomial::zero(self.ctx())) } else { None });
        }
        let r = gb.normal_form(&y);
        if r.degree_in(0) > 0 {
            return Ok(None);
        }
        let mut back = alloc::vec![0usize];
        back.extend(0..n);
        let b = r.remap(self.ctx(), &back);
        let b = self.normal_form(&b)?;
        if !self.equal(&self.mul(a, &b)?, &Polynomial::one(self.ctx()))? {
            return Err(Error::InvariantViolation("computed inverse fails to invert".into()));
        }
        Ok(Some(b))
    }

    pub fn is_unit(&self, a: &Polynomial) -> Result<bool> {
        let ideal = self.relations.add_generators(core::slice::from_ref(a))?;
        ideal.is_unit()
    }

    /// The quotient by additional relations.
    pub fn quotient(&self, extra: &[Polynomial]) -> Result<Self> {
        let relations = self.relations.add_generators(extra)?;
        Ok(RingPresentation { names: self.names.clone(), relations, basis: OnceCell::new() })
    }

    /// Replaces the relations by another ideal of the same ambient ring.
    pub fn with_relations(&self, relations: IdealPresentation) -> Result<Self> {
        if relations.ctx().nvars != self.nvars() || !matches!(relations.domain(), crate::groebner::Domain::Integers) {
            return Err(Error::ContextMismatch("relations outside the ambient ring".into()));
        }
        let relations = relations.with_order(MonomialOrder::GrevLex).with_limits(self.limits());
        Ok(RingPresentation { names: self.names.clone(), relations, basis: OnceCell::new() })
    }

    pub fn format(&self, f: &Polynomial) -> String {
        f.to_text(&self.names)
    }
}
