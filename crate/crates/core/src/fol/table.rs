use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::spectrum::RingPresentation;

pub const DEFAULT_ELEMENT_CAP: usize = 64;

/// A finite ring with explicit addition and multiplication tables over the
/// normal forms of its elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRingTable {
    names: Vec<String>,
    elements: Vec<Polynomial>,
    index: BTreeMap<Polynomial, usize>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    zero: usize,
    one: usize,
}

impl FiniteRingTable {
    /// Closes `{0, 1, x1, ..., xn}` under `+` and `*`; fails with
    /// `CapExceeded` once more than `cap` elements appear.
    pub fn enumerate(r: &RingPresentation, cap: usize) -> Result<Self> {
        let cap = cap.min(u16::MAX as usize);
        let ctx = r.ctx();
        let mut elements: Vec<Polynomial> = Vec::new();
        let mut index: BTreeMap<Polynomial, usize> = BTreeMap::new();
        let mut insert = |p: Polynomial, elements: &mut Vec<Polynomial>| -> Result<usize> {
            if let Some(&i) = index.get(&p) {
                return Ok(i);
            }
            if elements.len() == cap {
                return Err(Error::CapExceeded(cap));
            }
            index.insert(p.clone(), elements.len());
            elements.push(p);
            Ok(elements.len() - 1)
        };
        let zero = insert(r.normal_form(&Polynomial::zero(ctx))?, &mut elements)?;
        let one = insert(r.normal_form(&Polynomial::one(ctx))?, &mut elements)?;
        for i in 0..r.nvars() {
            insert(r.normal_form(&r.var(i))?, &mut elements)?;
        }
        let mut add: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut mul: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut done = 0;
        while done < elements.len() {
            let i = done;
            let mut j = 0;
            while j <= i {
                let s = r.add(&elements[i], &elements[j])?;
                let p = r.mul(&elements[i], &elements[j])?;
                let s = insert(s, &mut elements)?;
                let p = insert(p, &mut elements)?;
                add.insert((i, j), s);
                add.insert((j, i), s);
                mul.insert((i, j), p);
                mul.insert((j, i), p);
                j += 1;
            }
            done += 1;
        }
        let n = elements.len();
        let flat = |m: &BTreeMap<(usize, usize), usize>| -> Vec<u16> {
            (0..n * n).map(|k| m[&(k / n, k % n)] as u16).collect()
        };
        let add = flat(&add);
        let mul = flat(&mul);
        let neg = (0..n)
            .map(|a| (0..n).find(|&b| add[a * n + b] as usize == zero).map(|b| b as u16))
            .collect::<Option<Vec<u16>>>()
            .ok_or_else(|| Error::InvariantViolation("an element has no additive inverse".into()))?;
        let index = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let table = FiniteRingTable { names: r.names().to_vec(), elements, index, add, mul, neg, zero, one };
        table.check_axioms()?;
        Ok(table)
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.len();
        let fail = |what: &str| Err(Error::InvariantViolation(format!("finite ring table violates {what}")));
        for a in 0..n {
            if self.add(a, self.zero) != a || self.mul(a, self.one) != a || self.add(a, self.neg(a)) != self.zero {
                return fail("an identity law");
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return fail("commutativity");
                }
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return fail("associativity of +");
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return fail("associativity of *");
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return fail("distributivity");
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Polynomial {
        &self.elements[i]
    }

    /// The index of a normal form.
    pub fn index_of(&self, p: &Polynomial) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn format(&self, i: usize) -> String {
        self.elements[i].to_text(&self.names)
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.len() + b] as usize
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.len() + b] as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    pub fn pow(&self, a: usize, e: u32) -> usize {
        (0..e).fold(self.one, |acc, _| self.mul(acc, a))
    }

    /// The image of an integer.
    pub fn from_integer(&self, c: &BigInt) -> usize {
        let m = self.characteristic();
        let k = (c.abs() % BigInt::from(m)).to_usize().unwrap_or(0);
        let mut acc = self.zero;
        for _ in 0..k {
            acc = self.add(acc, self.one);
        }
        if c.is_negative() {
            self.neg(acc)
        } else {
            acc
        }
    }

    /// The additive order of `1`.
    pub fn characteristic(&self) -> usize {
        let mut acc = self.one;
        let mut k = 1;
        while acc != self.zero {
            acc = self.add(acc, self.one);
            k += 1;
        }
        k
    }
}
