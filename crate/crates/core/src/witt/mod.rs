//! Truncated big Witt vectors `W_d(A)` indexed by the divisors of `d`.

mod descent;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use rand::Rng;

use crate::error::{Error, Result};
use crate::poly::{Context, Monomial, Polynomial};
use crate::spectrum::RingPresentation;

pub use descent::WittDescent;

pub fn divisors(d: u64) -> Vec<u64> {
    (1..=d).filter(|i| d.is_multiple_of(*i)).collect()
}

/// The universal sum, product and negation polynomials for `W_d`.
///
/// Variables are `X_i` for `i | d` (positions `0..k`) followed by `Y_i`
/// (positions `k..2k`), where `k` is the number of divisors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittPolynomialTable {
    d: u64,
    divisors: Vec<u64>,
    ctx: Context,
    sum: Vec<Polynomial>,
    product: Vec<Polynomial>,
    negation: Vec<Polynomial>,
    ghost: Vec<Polynomial>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WittOp {
    Add,
    Mul,
    Neg,
}

impl WittPolynomialTable {
    pub fn build(d: u64) -> Result<Self> {
        if d == 0 {
            return Err(Error::HypothesisViolation("Witt vectors need d >= 1".into()));
        }
        let divisors = divisors(d);
        let k = divisors.len();
        let ctx = Context::grevlex(2 * k);
        let xs: Vec<Polynomial> = (0..k).map(|i| Polynomial::var(ctx, i)).collect();
        let ys: Vec<Polynomial> = (0..k).map(|i| Polynomial::var(ctx, k + i)).collect();
        let ghost: Vec<Polynomial> = divisors.iter().map(|&j| ghost_poly(&divisors, j, &xs)).collect();
        let ghost_y: Vec<Polynomial> = divisors.iter().map(|&j| ghost_poly(&divisors, j, &ys)).collect();
        let targets_sum: Vec<Polynomial> = ghost.iter().zip(&ghost_y).map(|(a, b)| a + b).collect();
        let targets_prod: Vec<Polynomial> = ghost.iter().zip(&ghost_y).map(|(a, b)| a * b).collect();
        let targets_neg: Vec<Polynomial> = ghost.iter().map(|a| -a).collect();
        let sum = solve_ghost_equations(&divisors, &targets_sum)?;
        let product = solve_ghost_equations(&divisors, &targets_prod)?;
        let negation = solve_ghost_equations(&divisors, &targets_neg)?;
        let table = WittPolynomialTable { d, divisors, ctx, sum, product, negation, ghost };
        table.check_identities()?;
        Ok(table)
    }

    /// Rebuilds a table from stored polynomials, rechecking every identity.
    pub fn from_parts(
        d: u64,
        sum: Vec<Polynomial>,
        product: Vec<Polynomial>,
        negation: Vec<Polynomial>,
    ) -> Result<Self> {
        let divisors = divisors(d);
        let k = divisors.len();
        let ctx = Context::grevlex(2 * k);
        for p in sum.iter().chain(&product).chain(&negation) {
            if p.nvars() != 2 * k {
                return Err(Error::ContextMismatch("Witt polynomial in the wrong ring".into()));
            }
        }
        if sum.len() != k || product.len() != k || negation.len() != k {
            return Err(Error::ArityMismatch(format!("{k} polynomials expected per operation")));
        }
        let xs: Vec<Polynomial> = (0..k).map(|i| Polynomial::var(ctx, i)).collect();
        let ghost = divisors.iter().map(|&j| ghost_poly(&divisors, j, &xs)).collect();
        let table = WittPolynomialTable { d, divisors, ctx, sum, product, negation, ghost };
        table.check_identities()?;
        Ok(table)
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    pub fn ctx(&self) -> Context {
        self.ctx
    }

    /// `X1, X2, ..., Y1, Y2, ...` following the divisors.
    pub fn names(&self) -> Vec<String> {
        let xs = self.divisors.iter().map(|i| format!("X{i}"));
        let ys = self.divisors.iter().map(|i| format!("Y{i}"));
        xs.chain(ys).collect()
    }

    fn position(&self, j: u64) -> Result<usize> {
        self.divisors
            .iter()
            .position(|&i| i == j)
            .ok_or_else(|| Error::ArityMismatch(format!("{j} does not divide {}", self.d)))
    }

    pub fn sum(&self, j: u64) -> Result<&Polynomial> {
        Ok(&self.sum[self.position(j)?])
    }

    pub fn product(&self, j: u64) -> Result<&Polynomial> {
        Ok(&self.product[self.position(j)?])
    }

    pub fn negation(&self, j: u64) -> Result<&Polynomial> {
        Ok(&self.negation[self.position(j)?])
    }

    /// `w_j` in the `X` variables.
    pub fn ghost(&self, j: u64) -> Result<&Polynomial> {
        Ok(&self.ghost[self.position(j)?])
    }

    pub fn polynomials(&self, op: WittOp) -> &[Polynomial] {
        match op {
            WittOp::Add => &self.sum,
            WittOp::Mul => &self.product,
            WittOp::Neg => &self.negation,
        }
    }

    /// Ghost equations and symmetry, as polynomial identities.
    fn check_identities(&self) -> Result<()> {
        let k = self.divisors.len();
        let ctx = self.ctx;
        let ys: Vec<Polynomial> = (0..k).map(|i| Polynomial::var(ctx, k + i)).collect();
        let mut swap: Vec<usize> = (k..2 * k).collect();
        swap.extend(0..k);
        for (pos, &j) in self.divisors.iter().enumerate() {
            let wx = &self.ghost[pos];
            let wy = ghost_poly(&self.divisors, j, &ys);
            let checks = [
                (ghost_poly(&self.divisors, j, &self.sum), wx + &wy),
                (ghost_poly(&self.divisors, j, &self.product), wx * &wy),
                (ghost_poly(&self.divisors, j, &self.negation), -wx),
            ];
            for (lhs, rhs) in checks {
                if lhs != rhs {
                    return Err(Error::InvariantViolation(format!("ghost equation fails at index {j}")));
                }
            }
            if self.sum[pos].remap(ctx, &swap) != self.sum[pos]
                || self.product[pos].remap(ctx, &swap) != self.product[pos]
            {
                return Err(Error::InvariantViolation(format!("Witt polynomial {j} is not symmetric")));
            }
            if self.negation[pos].variables().iter().any(|&v| v >= k) {
                return Err(Error::InvariantViolation(format!("negation polynomial {j} involves Y")));
            }
        }
        Ok(())
    }
}

/// `w_j(v) = Σ_{i|j} i v_i^{j/i}` with `v` indexed like `divisors`.
pub(crate) fn ghost_poly(divisors: &[u64], j: u64, v: &[Polynomial]) -> Polynomial {
    let ctx = v[0].ctx();
    let mut acc = Polynomial::zero(ctx);
    for (pos, &i) in divisors.iter().enumerate() {
        if j.is_multiple_of(i) {
            acc = &acc + &v[pos].pow((j / i) as u32).scale(&BigInt::from(i));
        }
    }
    acc
}

/// Solves `w_j(P) = targets_j` for all divisors, ascending.
fn solve_ghost_equations(divisors: &[u64], targets: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let mut out: Vec<Polynomial> = Vec::with_capacity(divisors.len());
    for (pos, &j) in divisors.iter().enumerate() {
        let mut rest = targets[pos].clone();
        for (q, &i) in divisors[..pos].iter().enumerate() {
            if j.is_multiple_of(i) {
                rest = &rest - &out[q].pow((j / i) as u32).scale(&BigInt::from(i));
            }
        }
        out.push(rest.exact_div_int(&BigInt::from(j))?);
    }
    Ok(out)
}

/// An element of `W_d(A)`: one normal form of `A` per divisor of `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WittVector {
    components: Vec<Polynomial>,
}

impl WittVector {
    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }
}

/// `W_d(A)` for a presented coefficient ring `A`.
#[derive(Clone, Debug)]
pub struct WittRing {
    table: WittPolynomialTable,
    base: RingPresentation,
}

impl WittRing {
    pub fn new(table: WittPolynomialTable, base: RingPresentation) -> Self {
        WittRing { table, base }
    }

    pub fn table(&self) -> &WittPolynomialTable {
        &self.table
    }

    pub fn base(&self) -> &RingPresentation {
        &self.base
    }

    pub fn d(&self) -> u64 {
        self.table.d
    }

    pub fn vector(&self, components: Vec<Polynomial>) -> Result<WittVector> {
        if components.len() != self.table.divisors.len() {
            return Err(Error::ArityMismatch(format!(
                "{} components for {} divisors",
                components.len(),
                self.table.divisors.len()
            )));
        }
        let components = components.iter().map(|c| self.base.normal_form(c)).collect::<Result<_>>()?;
        Ok(WittVector { components })
    }

    pub fn from_integers(&self, components: &[i64]) -> Result<WittVector> {
        self.vector(components.iter().map(|&c| self.base.constant(c)).collect())
    }

    pub fn zero(&self) -> WittVector {
        let z = Polynomial::zero(self.base.ctx());
        WittVector { components: alloc::vec![z; self.table.divisors.len()] }
    }

    pub fn one(&self) -> Result<WittVector> {
        let mut components = self.zero().components;
        components[0] = self.base.normal_form(&Polynomial::one(self.base.ctx()))?;
        Ok(WittVector { components })
    }

    fn check(&self, a: &WittVector) -> Result<()> {
        if a.components.len() != self.table.divisors.len()
            || a.components.iter().any(|c| c.nvars() != self.base.nvars())
        {
            return Err(Error::ContextMismatch("Witt vector over another ring".into()));
        }
        Ok(())
    }

    fn apply(&self, polys: &[Polynomial], a: &WittVector, b: &WittVector) -> Result<WittVector> {
        self.check(a)?;
        self.check(b)?;
        let mut values: Vec<Polynomial> = a.components.clone();
        values.extend(b.components.iter().cloned());
        let components = polys
            .iter()
            .map(|p| self.base.normal_form(&p.compose(&values, self.base.ctx())?))
            .collect::<Result<_>>()?;
        Ok(WittVector { components })
    }

    pub fn arith(&self, op: WittOp, a: &WittVector, b: &WittVector) -> Result<WittVector> {
        self.apply(self.table.polynomials(op), a, b)
    }

    pub fn add(&self, a: &WittVector, b: &WittVector) -> Result<WittVector> {
        self.apply(&self.table.sum, a, b)
    }

    pub fn mul(&self, a: &WittVector, b: &WittVector) -> Result<WittVector> {
        self.apply(&self.table.product, a, b)
    }

    pub fn neg(&self, a: &WittVector) -> Result<WittVector> {
        self.apply(&self.table.negation, a, &self.zero())
    }

    pub fn sub(&self, a: &WittVector, b: &WittVector) -> Result<WittVector> {
        self.add(a, &self.neg(b)?)
    }

    /// `(w_j(a_{|j}))_{j | d}`.
    pub fn ghost(&self, a: &WittVector) -> Result<Vec<Polynomial>> {
        self.check(a)?;
        self.table
            .divisors
            .iter()
            .map(|&j| self.base.normal_form(&ghost_poly(&self.table.divisors, j, &a.components)))
            .collect()
    }

    /// `w_d(a)`.
    pub fn w_map(&self, a: &WittVector) -> Result<Polynomial> {
        self.check(a)?;
        self.base.normal_form(&ghost_poly(&self.table.divisors, self.table.d, &a.components))
    }

    /// The preimage of a ghost sequence when every divisor of `d` is a unit.
    pub fn from_ghost(&self, g: &[Polynomial]) -> Result<WittVector> {
        let divs = &self.table.divisors;
        if g.len() != divs.len() {
            return Err(Error::ArityMismatch(format!("{} ghost components for {} divisors", g.len(), divs.len())));
        }
        let mut inverses = Vec::with_capacity(divs.len());
        for &j in divs {
            match self.base.inverse(&self.base.constant(j))? {
                Some(inv) => inverses.push(inv),
                None => return Err(Error::NotInvertible(format!("{j} is not a unit in the coefficient ring"))),
            }
        }
        let mut out: Vec<Polynomial> = Vec::with_capacity(divs.len());
        for (pos, &j) in divs.iter().enumerate() {
            let mut rest = g[pos].clone();
            for (q, &i) in divs[..pos].iter().enumerate() {
                if j.is_multiple_of(i) {
                    rest = &rest - &out[q].pow((j / i) as u32).scale(&BigInt::from(i));
                }
            }
            out.push(self.base.mul(&inverses[pos], &rest)?);
        }
        Ok(WittVector { components: out })
    }

    pub fn equal(&self, a: &WittVector, b: &WittVector) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        for (x, y) in a.components.iter().zip(&b.components) {
            if !self.base.equal(x, y)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// A vector whose components are random polynomials of degree at most
    /// one in each variable, with coefficients in `[-bound, bound]`.
    pub fn random(&self, rng: &mut impl Rng, bound: i64) -> Result<WittVector> {
        let n = self.base.nvars();
        let ctx = self.base.ctx();
        let mut comps = Vec::with_capacity(self.table.divisors.len());
        for _ in &self.table.divisors {
            let mut terms = Vec::new();
            for mask in 0..(1u32 << n.min(3)) {
                let e: Vec<u32> = (0..n).map(|v| if v < 3 { (mask >> v) & 1 } else { 0 }).collect();
                terms.push((Monomial::from_exponents(e), BigInt::from(rng.gen_range(-bound..=bound))));
            }
            comps.push(Polynomial::from_terms(ctx, terms));
        }
        self.vector(comps)
    }
}

#[cfg(test)]
mod tests;
