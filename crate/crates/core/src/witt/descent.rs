use alloc::vec::Vec;

use num_bigint::BigInt;
use rand::Rng;

use super::{ghost_poly, WittPolynomialTable, WittRing, WittVector};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};
use crate::spectrum::RingPresentation;

/// The map `t: W_d(B/I) -> B` with `t(r(b)) = w_d(b)`, available when
/// `I^2 = 0` and `d I = 0` in `B`.
#[derive(Clone, Debug)]
pub struct WittDescent {
    upper: RingPresentation,
    ideal: Vec<Polynomial>,
    lower: WittRing,
}

impl WittDescent {
    pub fn new(upper: RingPresentation, ideal: Vec<Polynomial>, table: WittPolynomialTable) -> Result<Self> {
        let d = BigInt::from(table.d());
        for (i, f) in ideal.iter().enumerate() {
            if f.nvars() != upper.nvars() {
                return Err(Error::ContextMismatch("ideal generator outside the ring".into()));
            }
            if !upper.is_zero(&f.scale(&d))? {
                return Err(Error::HypothesisViolation("d does not annihilate the ideal".into()));
            }
            for g in &ideal[i..] {
                if !upper.is_zero(&(f * g))? {
                    return Err(Error::HypothesisViolation("the ideal does not square to zero".into()));
                }
            }
        }
        let lower = upper.quotient(&ideal)?;
        Ok(WittDescent { upper, ideal, lower: WittRing::new(table, lower) })
    }

    pub fn upper(&self) -> &RingPresentation {
        &self.upper
    }

    /// `W_d(B/I)`.
    pub fn lower(&self) -> &WittRing {
        &self.lower
    }

    /// Componentwise reduction `W_d(B) -> W_d(B/I)`.
    pub fn reduce(&self, components: &[Polynomial]) -> Result<WittVector> {
        self.lower.vector(components.to_vec())
    }

    /// `t(a)`, evaluated as `w_d` of the given lift.
    pub fn apply(&self, a: &WittVector) -> Result<Polynomial> {
        self.apply_lift(a.components())
    }

    /// `w_d` of an explicit lift to `B`.
    pub fn apply_lift(&self, lift: &[Polynomial]) -> Result<Polynomial> {
        let table = self.lower.table();
        self.upper.normal_form(&ghost_poly(table.divisors(), table.d(), lift))
    }

    /// Evaluates `t(a)` on `samples` random lifts `a_i + x_i` with `x_i` in
    /// `I` and reports whether all values agree.
    pub fn lift_independent(&self, a: &WittVector, rng: &mut impl Rng, samples: usize) -> Result<bool> {
        let reference = self.apply(a)?;
        let n = self.upper.nvars();
        let ctx = self.upper.ctx();
        for _ in 0..samples {
            let mut lift = Vec::with_capacity(a.components().len());
            for c in a.components() {
                let mut x = c.clone();
                for g in &self.ideal {
                    let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..2)).collect();
                    let m = Polynomial::monomial(ctx, Monomial::from_exponents(e), BigInt::from(rng.gen_range(-5..=5)));
                    x = &x + &(&m * g);
                }
                lift.push(x);
            }
            if !self.upper.equal(&self.apply_lift(&lift)?, &reference)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
