//! Sparse multivariate polynomials over the integers.
//!
//! Terms are stored in a vector sorted descending under the polynomial's
//! [`MonomialOrder`], with no zero coefficients and no repeated monomials.
//! Every constructor normalizes, so two equal polynomials in the same
//! [`Context`] compare equal structurally.

mod text;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use text::{default_names, PolyDisplay};

/// Exponent vector of a power product.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// If this is a power of a single variable, that variable.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }
}

/// Term orders. `Block(k)` compares the first `k` variables by graded
/// reverse lexicographic order and breaks ties with grevlex on the rest, so
/// it eliminates the first block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum MonomialOrder {
    Lex,
    #[default]
    GrevLex,
    Block(usize),
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::GrevLex => grevlex(&a.0, &b.0),
            MonomialOrder::Block(k) => {
                let k = k.min(a.0.len());
                grevlex(&a.0[..k], &b.0[..k]).then_with(|| grevlex(&a.0[k..], &b.0[k..]))
            }
        }
    }
}

/// Ambient ring `Z[x_1..x_n]` together with the term order used to sort
/// stored terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Context {
    pub nvars: usize,
    pub order: MonomialOrder,
}

impl Context {
    pub fn new(nvars: usize, order: MonomialOrder) -> Self {
        Context { nvars, order }
    }

    pub fn grevlex(nvars: usize) -> Self {
        Context { nvars, order: MonomialOrder::GrevLex }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub monomial: Monomial,
    pub coeff: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial {
    ctx: Context,
    terms: Vec<Term>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl Polynomial {
    pub fn zero(ctx: Context) -> Self {
        Polynomial { ctx, terms: Vec::new() }
    }

    pub fn constant(ctx: Context, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero(ctx);
        }
        Polynomial { ctx, terms: vec![Term { monomial: Monomial::one(ctx.nvars), coeff: c }] }
    }

    pub fn one(ctx: Context) -> Self {
        Self::constant(ctx, 1)
    }

    pub fn var(ctx: Context, index: usize) -> Self {
        assert!(index < ctx.nvars, "variable index out of range");
        Self::monomial(ctx, Monomial::var(ctx.nvars, index), BigInt::one())
    }

    pub fn monomial(ctx: Context, monomial: Monomial, coeff: BigInt) -> Self {
        assert_eq!(monomial.nvars(), ctx.nvars, "monomial arity mismatch");
        if coeff.is_zero() {
            return Self::zero(ctx);
        }
        Polynomial { ctx, terms: vec![Term { monomial, coeff }] }
    }

    /// Builds a normalized polynomial from arbitrary (possibly repeated,
    /// possibly zero) terms.
    pub fn from_terms<I>(ctx: Context, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut raw: Vec<Term> = terms
            .into_iter()
            .map(|(monomial, coeff)| {
                assert_eq!(monomial.nvars(), ctx.nvars, "monomial arity mismatch");
                Term { monomial, coeff }
            })
            .collect();
        let order = ctx.order;
        raw.sort_by(|a, b| order.cmp(&b.monomial, &a.monomial));
        let mut terms: Vec<Term> = Vec::with_capacity(raw.len());
        for t in raw {
            match terms.last_mut() {
                Some(last) if last.monomial == t.monomial => last.coeff += t.coeff,
                _ => terms.push(t),
            }
        }
        terms.retain(|t| !t.coeff.is_zero());
        Polynomial { ctx, terms }
    }

    pub fn ctx(&self) -> Context {
        self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.ctx.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.ctx.order
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.monomial.is_one())
    }

    /// The constant value, if this polynomial has no variables in it.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [t] if t.monomial.is_one() => Some(t.coeff.clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms.first().expect("leading monomial of zero polynomial").monomial
    }

    pub fn lc(&self) -> &BigInt {
        &self.terms.first().expect("leading coefficient of zero polynomial").coeff
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.iter().map(|t| t.monomial.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|t| t.monomial.0[var]).max().unwrap_or(0)
    }

    /// Indices of variables that occur in some term.
    pub fn variables(&self) -> Vec<usize> {
        (0..self.ctx.nvars).filter(|&i| self.terms.iter().any(|t| t.monomial.0[i] > 0)).collect()
    }

    /// `Some(i)` when `x_i` is the only variable occurring.
    pub fn univariate_var(&self) -> Option<usize> {
        match self.variables().as_slice() {
            [v] => Some(*v),
            _ => None,
        }
    }

    fn check_ctx(&self, other: &Polynomial) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch(format!("{:?} vs {:?}", self.ctx, other.ctx)));
        }
        Ok(())
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        let order = self.ctx.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match order.cmp(&a[i].monomial, &b[j].monomial) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate_other { -&b[j].coeff } else { b[j].coeff.clone() };
                    out.push(Term { monomial: b[j].monomial.clone(), coeff: c });
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other { &a[i].coeff - &b[j].coeff } else { &a[i].coeff + &b[j].coeff };
                    if !c.is_zero() {
                        out.push(Term { monomial: a[i].monomial.clone(), coeff: c });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate_other { -&t.coeff } else { t.coeff.clone() };
            out.push(Term { monomial: t.monomial.clone(), coeff: c });
        }
        Polynomial { ctx: self.ctx, terms: out }
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.ctx);
        }
        if other.terms.len() == 1 {
            let t = &other.terms[0];
            return self.mul_term(&t.coeff, &t.monomial);
        }
        if self.terms.len() == 1 {
            let t = &self.terms[0];
            return other.mul_term(&t.coeff, &t.monomial);
        }
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for s in &self.terms {
            for t in &other.terms {
                let m = s.monomial.mul(&t.monomial);
                let c = &s.coeff * &t.coeff;
                *acc.entry(m).or_default() += c;
            }
        }
        Polynomial::from_terms(self.ctx, acc)
    }

    pub fn arith(&self, other: &Polynomial, op: ArithOp) -> Result<Polynomial> {
        self.check_ctx(other)?;
        Ok(match op {
            ArithOp::Add => self.merge(other, false),
            ArithOp::Sub => self.merge(other, true),
            ArithOp::Mul => self.mul_unchecked(other),
        })
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.arith(other, ArithOp::Add)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.arith(other, ArithOp::Sub)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.arith(other, ArithOp::Mul)
    }

    /// `c * m * self`; term order is preserved by multiplicativity.
    pub fn mul_term(&self, c: &BigInt, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.ctx);
        }
        let terms = self.terms.iter().map(|t| Term { monomial: t.monomial.mul(m), coeff: &t.coeff * c }).collect();
        Polynomial { ctx: self.ctx, terms }
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        self.mul_term(c, &Monomial::one(self.ctx.nvars))
    }

    /// `self - c * m * g` without materializing the product separately.
    pub fn sub_mul_term(&self, c: &BigInt, m: &Monomial, g: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.ctx, g.ctx);
        self.merge(&g.mul_term(c, m), true)
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Exact division by a nonzero integer.
    pub fn exact_div_int(&self, n: &BigInt) -> Result<Polynomial> {
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let (q, r) = t.coeff.div_rem(n);
            if !r.is_zero() {
                return Err(Error::NonDivisible { coefficient: t.coeff.clone(), divisor: n.clone() });
            }
            terms.push(Term { monomial: t.monomial.clone(), coeff: q });
        }
        Ok(Polynomial { ctx: self.ctx, terms })
    }

    /// Exact division by a polynomial in `Z[x]`; fails unless `g` divides
    /// `self`.
    pub fn div_exact(&self, g: &Polynomial) -> Result<Polynomial> {
        self.check_ctx(g)?;
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut rem = self.clone();
        let mut quot = Vec::new();
        let (glm, glc) = (g.lm().clone(), g.lc().clone());
        while let Some(lt) = rem.leading_term() {
            if !glm.divides(&lt.monomial) {
                return Err(Error::NonDivisible { coefficient: lt.coeff.clone(), divisor: glc });
            }
            let (q, r) = lt.coeff.div_rem(&glc);
            if !r.is_zero() {
                return Err(Error::NonDivisible { coefficient: lt.coeff.clone(), divisor: glc });
            }
            let m = lt.monomial.div(&glm);
            rem = rem.sub_mul_term(&q, &m, g);
            quot.push((m, q));
        }
        Ok(Polynomial::from_terms(self.ctx, quot))
    }

    /// Coefficients reduced into `[0, p)`.
    pub fn reduce_mod(&self, p: &BigInt) -> Polynomial {
        let p = p.abs();
        let terms = self
            .terms
            .iter()
            .filter_map(|t| {
                let c = t.coeff.mod_floor(&p);
                (!c.is_zero()).then(|| Term { monomial: t.monomial.clone(), coeff: c })
            })
            .collect();
        Polynomial { ctx: self.ctx, terms }
    }

    /// Non-negative gcd of all coefficients; zero for the zero polynomial.
    pub fn integer_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for t in &self.terms {
            g = g.gcd(&t.coeff);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.integer_content();
        if self.lc().is_negative() {
            c = -c;
        }
        self.exact_div_int(&c).expect("content divides every coefficient")
    }

    /// Re-sorts the terms for another term order on the same variables.
    pub fn with_order(&self, order: MonomialOrder) -> Polynomial {
        if order == self.ctx.order {
            return self.clone();
        }
        let ctx = Context { nvars: self.ctx.nvars, order };
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.cmp(&b.monomial, &a.monomial));
        Polynomial { ctx, terms }
    }

    /// Moves variable `i` to position `mapping[i]` of a ring with
    /// `target.nvars` variables.
    pub fn remap(&self, target: Context, mapping: &[usize]) -> Polynomial {
        assert_eq!(mapping.len(), self.ctx.nvars);
        Polynomial::from_terms(
            target,
            self.terms.iter().map(|t| {
                let mut e = vec![0u32; target.nvars];
                for (i, &x) in t.monomial.0.iter().enumerate() {
                    if x > 0 {
                        e[mapping[i]] += x;
                    }
                }
                (Monomial(e), t.coeff.clone())
            }),
        )
    }

    /// Embeds into a ring with more variables, keeping indices.
    pub fn extend(&self, target: Context) -> Polynomial {
        let mapping: Vec<usize> = (0..self.ctx.nvars).collect();
        self.remap(target, &mapping)
    }

    /// Substitutes polynomials for variables. Every variable occurring in
    /// `self` must be assigned; all values must live in `target`.
    pub fn substitute(&self, assignment: &BTreeMap<usize, Polynomial>, target: Context) -> Result<Polynomial> {
        for v in assignment.values() {
            if v.ctx != target {
                return Err(Error::ContextMismatch("substitution value outside target context".into()));
            }
        }
        let mut powers: Vec<Vec<Polynomial>> = vec![Vec::new(); self.ctx.nvars];
        let mut acc = Polynomial::zero(target);
        for t in &self.terms {
            let mut prod = Polynomial::constant(target, t.coeff.clone());
            for (i, &e) in t.monomial.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let base = assignment.get(&i).ok_or(Error::MissingAssignment(i))?;
                let cache = &mut powers[i];
                if cache.is_empty() {
                    cache.push(Polynomial::one(target));
                }
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap().mul_unchecked(base);
                    cache.push(next);
                }
                prod = prod.mul_unchecked(&cache[e as usize]);
                if prod.is_zero() {
                    break;
                }
            }
            acc = acc.merge(&prod, false);
        }
        Ok(acc)
    }

    /// Substitution with one value per variable.
    pub fn compose(&self, values: &[Polynomial], target: Context) -> Result<Polynomial> {
        if values.len() != self.ctx.nvars {
            return Err(Error::ArityMismatch(format!("{} values for {} variables", values.len(), self.ctx.nvars)));
        }
        let map: BTreeMap<usize, Polynomial> = values.iter().cloned().enumerate().collect();
        self.substitute(&map, target)
    }

    /// Evaluates at integer points.
    pub fn eval_integers(&self, point: &[BigInt]) -> BigInt {
        assert_eq!(point.len(), self.ctx.nvars);
        let mut acc = BigInt::zero();
        for t in &self.terms {
            let mut v = t.coeff.clone();
            for (x, &e) in point.iter().zip(&t.monomial.0) {
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += v;
        }
        acc
    }

    /// Partial derivative with respect to `var`.
    pub fn derivative(&self, var: usize) -> Polynomial {
        Polynomial::from_terms(
            self.ctx,
            self.terms.iter().filter(|t| t.monomial.0[var] > 0).map(|t| {
                let mut e = t.monomial.0.clone();
                let k = e[var];
                e[var] -= 1;
                (Monomial(e), &t.coeff * BigInt::from(k))
            }),
        )
    }

    /// Largest monomial dividing every term, and the cofactor.
    pub fn split_monomial_content(&self) -> (Monomial, Polynomial) {
        let Some(first) = self.terms.first() else {
            return (Monomial::one(self.ctx.nvars), self.clone());
        };
        let mut g = first.monomial.clone();
        for t in &self.terms[1..] {
            g = g.gcd(&t.monomial);
        }
        let rest = Polynomial {
            ctx: self.ctx,
            terms: self.terms.iter().map(|t| Term { monomial: t.monomial.div(&g), coeff: t.coeff.clone() }).collect(),
        };
        (g, rest)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial context mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial context mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial context mismatch")
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ctx: self.ctx,
            terms: self.terms.iter().map(|t| Term { monomial: t.monomial.clone(), coeff: -&t.coeff }).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
