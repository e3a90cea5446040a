//! Dense univariate polynomials over `Z` and their factorization over `Q`
//! (square-free part, modular factorization, Hensel lifting and factor
//! recombination).

pub mod fp;

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::integer::{is_prime_u64, mod_floor};
use crate::poly::{Context, Monomial, Polynomial};
pub use fp::FpPoly;

/// Integer polynomial, coefficients low to high, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZPoly(Vec<BigInt>);

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        ZPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn lc(&self) -> BigInt {
        self.0.last().cloned().unwrap_or_default()
    }

    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Content removed, leading coefficient positive.
    pub fn primitive(&self) -> ZPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        ZPoly(self.0.iter().map(|a| a / &c).collect())
    }

    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() || other.is_zero() {
            return ZPoly(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly::new(out)
    }

    pub fn derivative(&self) -> ZPoly {
        ZPoly::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    /// Pseudo-remainder `lc(d)^k * self mod d`.
    fn pseudo_rem(&self, d: &ZPoly) -> ZPoly {
        let mut r = self.0.clone();
        let dn = d.degree();
        let dl = d.lc();
        while r.len() > dn && !r.is_empty() {
            let k = r.len() - 1;
            let c = r[k].clone();
            for x in r.iter_mut() {
                *x *= &dl;
            }
            for (j, b) in d.0.iter().enumerate() {
                r[k - dn + j] -= &c * b;
            }
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        ZPoly::new(r)
    }

    /// Primitive gcd (positive leading coefficient).
    pub fn gcd(&self, other: &ZPoly) -> ZPoly {
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.degree() < b.degree() {
            core::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a.primitive()
    }

    /// Exact quotient over `Z`, if `d` divides `self`.
    pub fn div_exact(&self, d: &ZPoly) -> Option<ZPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        if self.degree() < d.degree() {
            return None;
        }
        let mut r = self.0.clone();
        let dn = d.degree();
        let dl = d.lc();
        let mut q = vec![BigInt::zero(); r.len() - dn];
        for k in (0..q.len()).rev() {
            let (c, rem) = r[k + dn].div_rem(&dl);
            if !rem.is_zero() {
                return None;
            }
            for (j, b) in d.0.iter().enumerate() {
                r[k + j] -= &c * b;
            }
            q[k] = c;
        }
        r.iter().all(|c| c.is_zero()).then(|| ZPoly::new(q))
    }

    fn to_fp(&self, p: u64) -> FpPoly {
        let bp = BigInt::from(p);
        FpPoly::new(p, self.0.iter().map(|c| mod_floor(c, &bp).to_u64().unwrap()).collect())
    }

    fn from_fp(f: &FpPoly) -> ZPoly {
        ZPoly::new(f.coeffs().iter().map(|&c| BigInt::from(c)).collect())
    }

    fn reduce(&self, m: &BigInt) -> ZPoly {
        ZPoly::new(self.0.iter().map(|c| mod_floor(c, m)).collect())
    }

    fn symmetric(&self, m: &BigInt) -> ZPoly {
        let half = m >> 1;
        ZPoly::new(
            self.0
                .iter()
                .map(|c| {
                    let r = mod_floor(c, m);
                    if r > half {
                        r - m
                    } else {
                        r
                    }
                })
                .collect(),
        )
    }

    fn add(&self, other: &ZPoly) -> ZPoly {
        let n = self.0.len().max(other.0.len());
        ZPoly::new(
            (0..n)
                .map(|i| self.0.get(i).cloned().unwrap_or_default() + other.0.get(i).cloned().unwrap_or_default())
                .collect(),
        )
    }

    fn sub(&self, other: &ZPoly) -> ZPoly {
        self.add(&ZPoly(other.0.iter().map(|c| -c).collect()))
    }

    fn scale(&self, c: &BigInt) -> ZPoly {
        ZPoly::new(self.0.iter().map(|a| a * c).collect())
    }

    /// Irreducible factors over `Q`, as primitive integer polynomials with
    /// positive leading coefficient, with multiplicities. Constants are
    /// dropped. Sorted for determinism.
    pub fn factor(&self) -> Vec<(ZPoly, u32)> {
        let f = self.primitive();
        if f.degree() == 0 {
            return Vec::new();
        }
        let g = f.gcd(&f.derivative());
        let sqfree = f.div_exact(&g).expect("gcd divides").primitive();
        let mut out = Vec::new();
        for q in sqfree.factor_squarefree() {
            let mut rest = f.clone();
            let mut e = 0;
            while let Some(next) = rest.div_exact(&q) {
                rest = next;
                e += 1;
            }
            out.push((q, e));
        }
        out.sort();
        out
    }

    pub fn is_irreducible(&self) -> bool {
        let f = self.factor();
        f.len() == 1 && f[0].1 == 1
    }

    /// Zassenhaus factorization of a primitive square-free polynomial.
    fn factor_squarefree(&self) -> Vec<ZPoly> {
        let f = self.primitive();
        let n = f.degree();
        if n <= 1 {
            return vec![f];
        }
        let lc = f.lc();
        // pick the good prime with the fewest modular factors among a few
        let mut best: Option<(u64, Vec<FpPoly>)> = None;
        let mut tried = 0;
        let mut p = 2u64;
        while tried < 6 {
            p += 1;
            if !is_prime_u64(p) || (&lc % BigInt::from(p)).is_zero() {
                continue;
            }
            let fp = f.to_fp(p);
            if fp.degree() != n || !fp.gcd(&fp.derivative()).is_one() {
                continue;
            }
            tried += 1;
            let factors: Vec<FpPoly> = fp.factor().into_iter().map(|(g, _)| g).collect();
            if best.as_ref().is_none_or(|(_, b)| factors.len() < b.len()) {
                best = Some((p, factors));
            }
            if best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
                break;
            }
        }
        let (p, factors) = best.expect("some prime is good for a square-free polynomial");
        if factors.len() == 1 {
            return vec![f];
        }
        // Mignotte-style bound on coefficients of lc * (factor / lc(factor))
        let norm2: BigInt = f.0.iter().map(|c| c * c).sum();
        let bound = (norm2.sqrt() + 1u32) * (BigInt::one() << n) * lc.abs();
        let target = bound * 2u32;
        let bp = BigInt::from(p);
        let mut modulus = bp.clone();
        let mut k = 1u32;
        while modulus <= target {
            modulus *= &bp;
            k += 1;
        }
        let lifted = hensel_lift(&f, &factors, p, k);
        recombine(f, lifted, &modulus)
    }
}

/// Lifts `f = lc * prod(factors) mod p` to a factorization modulo `p^k`
/// with monic factors.
fn hensel_lift(f: &ZPoly, factors: &[FpPoly], p: u64, k: u32) -> Vec<ZPoly> {
    let modulus = BigInt::from(p).pow(k);
    if factors.len() == 1 {
        let inv = crate::integer::mod_inverse(&f.lc(), &modulus).expect("p does not divide lc");
        return vec![f.scale(&inv).reduce(&modulus)];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let g = left.iter().fold(FpPoly::one(p), |acc, h| acc.mul(h));
    let h = right.iter().fold(FpPoly::one(p), |acc, q| acc.mul(q)).scale(f.to_fp(p).lc());
    let (big_g, big_h) = lift_pair(f, &g, &h, p, k);
    let mut out = hensel_lift(&big_g, left, p, k);
    out.extend(hensel_lift(&big_h, right, p, k));
    out
}

/// Linear Hensel lifting of `f = g*h mod p` (g monic) to modulus `p^k`.
fn lift_pair(f: &ZPoly, g: &FpPoly, h: &FpPoly, p: u64, k: u32) -> (ZPoly, ZPoly) {
    let (one, s, t) = FpPoly::ext_gcd(g, h);
    debug_assert!(one.is_one());
    let bp = BigInt::from(p);
    let mut big_g = ZPoly::from_fp(g);
    let mut big_h = ZPoly::from_fp(h);
    let mut q = bp.clone();
    for _ in 1..k {
        let next = &q * &bp;
        let e = f.sub(&big_g.mul(&big_h)).reduce(&next);
        let e = ZPoly::new(e.0.iter().map(|c| c / &q).collect()).to_fp(p);
        let (quot, dg) = t.mul(&e).divrem(g);
        let dh = s.mul(&e).add(&quot.mul(h));
        big_g = big_g.add(&ZPoly::from_fp(&dg).scale(&q)).reduce(&next);
        big_h = big_h.add(&ZPoly::from_fp(&dh).scale(&q)).reduce(&next);
        q = next;
    }
    (big_g, big_h)
}

fn recombine(mut f: ZPoly, mut lifted: Vec<ZPoly>, modulus: &BigInt) -> Vec<ZPoly> {
    let mut out = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= lifted.len() {
        let r = lifted.len();
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            let lc = f.lc();
            let mut g = ZPoly::new(vec![lc]);
            for &i in &subset {
                g = g.mul(&lifted[i]).reduce(modulus);
            }
            let cand = g.symmetric(modulus).primitive();
            if let Some(q) = f.div_exact(&cand) {
                out.push(cand);
                f = q.primitive();
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
                continue 'outer;
            }
            // next subset in lexicographic order
            let mut i = size;
            loop {
                if i == 0 {
                    size += 1;
                    continue 'outer;
                }
                i -= 1;
                if subset[i] < r - size + i {
                    break;
                }
            }
            subset[i] += 1;
            for j in i + 1..size {
                subset[j] = subset[j - 1] + 1;
            }
        }
    }
    if f.degree() > 0 {
        out.push(f.primitive());
    }
    out
}

/// Converts a polynomial in which only `var` occurs.
pub fn to_univariate(f: &Polynomial, var: usize) -> Result<ZPoly> {
    let mut coeffs = vec![BigInt::zero(); f.degree_in(var) as usize + 1];
    for t in f.terms() {
        let e = t.monomial.exponents();
        if e.iter().enumerate().any(|(i, &x)| i != var && x > 0) {
            return Err(Error::InvariantViolation("polynomial is not univariate".into()));
        }
        coeffs[e[var] as usize] += &t.coeff;
    }
    Ok(ZPoly::new(coeffs))
}

pub fn from_univariate(f: &ZPoly, ctx: Context, var: usize) -> Polynomial {
    Polynomial::from_terms(
        ctx,
        f.coeffs().iter().enumerate().map(|(i, c)| {
            let mut e = vec![0u32; ctx.nvars];
            e[var] = i as u32;
            (Monomial::from_exponents(e), c.clone())
        }),
    )
}

/// Irreducible factors over `F_p` of a polynomial in `Z[x]` read modulo `p`,
/// returned as integer polynomials with coefficients in `[0, p)`.
pub fn factor_mod_p(f: &ZPoly, p: u64) -> Vec<(ZPoly, u32)> {
    let fp = f.to_fp(p);
    if fp.is_zero() || fp.degree() == 0 {
        return Vec::new();
    }
    fp.factor().into_iter().map(|(g, e)| (ZPoly::from_fp(&g), e)).collect()
}
