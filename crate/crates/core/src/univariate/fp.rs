//! Dense univariate polynomials over a prime field `F_p` with `p < 2^63`,
//! and their factorization (square-free split, distinct-degree and
//! equal-degree factorization).

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::integer::{inv_mod_u64, mul_mod_u64};

/// Coefficients low to high, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        let mut f = FpPoly { p, coeffs };
        f.trim();
        f
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        FpPoly::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod_u64(self.lc(), self.p).expect("nonzero element of a field");
        self.scale(inv)
    }

    pub fn scale(&self, c: u64) -> Self {
        FpPoly::new(self.p, self.coeffs.iter().map(|&a| mul_mod_u64(a, c, self.p)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let p = self.p;
        let c = (0..n)
            .map(|i| {
                let a = *self.coeffs.get(i).unwrap_or(&0);
                let b = *other.coeffs.get(i).unwrap_or(&0);
                ((a as u128 + b as u128) % p as u128) as u64
            })
            .collect();
        FpPoly::new(p, c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let p = self.p;
        FpPoly::new(p, self.coeffs.iter().map(|&a| if a == 0 { 0 } else { p - a }).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p as u128;
        let mut acc = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u128 * b as u128) % p;
            }
        }
        FpPoly::new(self.p, acc.into_iter().map(|v| v as u64).collect())
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        if self.coeffs.len() < d.coeffs.len() {
            return (FpPoly::zero(p), self.clone());
        }
        let inv = inv_mod_u64(d.lc(), p).expect("field");
        let mut r = self.coeffs.clone();
        let dn = d.coeffs.len() - 1;
        let mut q = vec![0u64; r.len() - dn];
        for k in (0..q.len()).rev() {
            let c = mul_mod_u64(r[k + dn], inv, p);
            q[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &b) in d.coeffs.iter().enumerate() {
                let s = mul_mod_u64(c, b, p);
                r[k + j] = (r[k + j] + p - s) % p;
            }
        }
        r.truncate(dn);
        (FpPoly::new(p, q), FpPoly::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.divrem(d);
        debug_assert!(r.is_zero());
        q
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*a + t*b = g`, `g` monic.
    pub fn ext_gcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let p = a.p;
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (FpPoly::one(p), FpPoly::zero(p));
        let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = core::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = core::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = core::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = inv_mod_u64(r0.lc(), p).expect("field");
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        FpPoly::new(p, self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| mul_mod_u64(c, i as u64 % p, p)).collect())
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let mut acc = FpPoly::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    /// The p-th root of a polynomial in `x^p` (Frobenius is the identity on
    /// `F_p`).
    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        FpPoly::new(self.p, self.coeffs.iter().step_by(p).copied().collect())
    }

    /// Square-free decomposition of a monic polynomial: pairs
    /// `(g, e)` with `self = prod g^e`, each `g` square-free.
    pub fn squarefree_decomposition(&self) -> Vec<(FpPoly, u32)> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        if fp.is_zero() {
            for (g, e) in f.pth_root().squarefree_decomposition() {
                out.push((g, e * self.p as u32));
            }
            return out;
        }
        let mut c = f.gcd(&fp);
        let mut w = f.div_exact(&c);
        let mut i = 1u32;
        while !w.is_one() {
            let y = w.gcd(&c);
            let z = w.div_exact(&y);
            if z.degree() > 0 {
                out.push((z, i));
            }
            i += 1;
            w = y;
            c = c.div_exact(&w);
        }
        if !c.is_one() {
            for (g, e) in c.pth_root().squarefree_decomposition() {
                out.push((g, e * self.p as u32));
            }
        }
        out
    }

    /// Distinct-degree factorization of a monic square-free polynomial.
    fn distinct_degree(&self) -> Vec<(FpPoly, usize)> {
        let p = self.p;
        let mut out = Vec::new();
        let mut f = self.clone();
        let x = FpPoly::x(p);
        let mut h = x.rem(&f);
        let mut d = 0;
        let pe = BigUint::from(p);
        while f.degree() >= 2 * (d + 1) {
            d += 1;
            h = h.pow_mod(&pe, &f);
            let g = h.sub(&x).gcd(&f);
            if !g.is_one() {
                f = f.div_exact(&g);
                h = h.rem(&f);
                out.push((g, d));
            }
        }
        if f.degree() > 0 {
            let deg = f.degree();
            out.push((f, deg));
        }
        out
    }

    /// Equal-degree splitting (Cantor-Zassenhaus).
    fn equal_degree(&self, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<FpPoly>) {
        let n = self.degree();
        if n == d {
            out.push(self.clone());
            return;
        }
        let p = self.p;
        loop {
            let a = FpPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
            if a.degree() == 0 {
                continue;
            }
            let b = if p == 2 {
                // trace map a + a^2 + ... + a^(2^(d-1))
                let mut t = a.rem(self);
                let mut acc = t.clone();
                let two = BigUint::from(2u32);
                for _ in 1..d {
                    t = t.pow_mod(&two, self);
                    acc = acc.add(&t);
                }
                acc
            } else {
                let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) >> 1;
                a.pow_mod(&e, self).sub(&FpPoly::one(p))
            };
            let g = b.gcd(self);
            if !g.is_zero() && g.degree() > 0 && g.degree() < n {
                let h = self.div_exact(&g);
                g.equal_degree(d, rng, out);
                h.equal_degree(d, rng, out);
                return;
            }
        }
    }

    /// Monic irreducible factors with multiplicities, sorted.
    pub fn factor(&self) -> Vec<(FpPoly, u32)> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d ^ self.p);
        let mut out = Vec::new();
        for (g, e) in self.squarefree_decomposition() {
            for (h, d) in g.distinct_degree() {
                let mut parts = Vec::new();
                h.equal_degree(d, &mut rng, &mut parts);
                out.extend(parts.into_iter().map(|q| (q, e)));
            }
        }
        out.sort();
        out
    }

    pub fn is_irreducible(&self) -> bool {
        let f = self.factor();
        f.len() == 1 && f[0].1 == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u64, c: &[u64]) -> FpPoly {
        FpPoly::new(p, c.to_vec())
    }

    fn product(fs: &[(FpPoly, u32)], p: u64) -> FpPoly {
        let mut acc = FpPoly::one(p);
        for (g, e) in fs {
            for _ in 0..*e {
                acc = acc.mul(g);
            }
        }
        acc
    }

    #[test]
    fn x2_plus_1_over_f3_is_irreducible() {
        assert!(poly(3, &[1, 0, 1]).is_irreducible());
        let f = poly(5, &[1, 0, 1]);
        assert_eq!(f.factor().len(), 2);
    }

    #[test]
    fn factors_multiply_back() {
        for p in [2u64, 3, 5, 7, 13] {
            let f = poly(p, &[1, 2, 0, 1, 1, 0, 3, 1]).monic();
            let fs = f.factor();
            assert_eq!(product(&fs, p), f, "p = {p}");
            for (g, _) in &fs {
                assert!(g.degree() > 0);
            }
        }
    }

    #[test]
    fn repeated_and_frobenius_factors() {
        // (x + 1)^2 * x^2 over F_2 -> derivative vanishes
        let p = 2;
        let f = poly(p, &[1, 1]).mul(&poly(p, &[1, 1])).mul(&poly(p, &[0, 1])).mul(&poly(p, &[0, 1]));
        let fs = f.factor();
        assert_eq!(fs, vec![(poly(p, &[0, 1]), 2), (poly(p, &[1, 1]), 2)]);
        // x^3 over F_3
        let g = poly(3, &[0, 0, 0, 1]);
        assert_eq!(g.factor(), vec![(poly(3, &[0, 1]), 3)]);
    }

    #[test]
    fn ext_gcd_identity() {
        let p = 7;
        let a = poly(p, &[1, 2, 3]);
        let b = poly(p, &[5, 1]);
        let (g, s, t) = FpPoly::ext_gcd(&a, &b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }
}
