//! First-order formulas in the language of rings, the uniform definability
//! formulas built from them, and evaluation over finite rings.

mod emit;
mod eval;
mod sexpr;
mod table;

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{Context, Polynomial};

pub use emit::{emit_jac, emit_kronecker, emit_morphism_formula, kronecker_slots, Kronecker};
pub use eval::{defined_set, eval, Evaluator};
pub use table::{FiniteRingTable, DEFAULT_ELEMENT_CAP};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Const(BigInt),
    Add(Vec<Term>),
    Mul(Vec<Term>),
    Neg(Box<Term>),
    Sub(Box<Term>, Box<Term>),
    Pow(Box<Term>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    True,
    False,
    Eq(Term, Term),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.into())
    }

    pub fn int(c: i64) -> Term {
        Term::Const(BigInt::from(c))
    }

    pub fn minus(a: Term, b: Term) -> Term {
        Term::Sub(Box::new(a), Box::new(b))
    }

    pub fn times(a: Term, b: Term) -> Term {
        Term::Mul(alloc::vec![a, b])
    }

    pub fn plus(a: Term, b: Term) -> Term {
        Term::Add(alloc::vec![a, b])
    }

    pub fn vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Const(_) => {}
            Term::Add(ts) | Term::Mul(ts) => ts.iter().for_each(|t| t.vars(out)),
            Term::Neg(t) | Term::Pow(t, _) => t.vars(out),
            Term::Sub(a, b) => {
                a.vars(out);
                b.vars(out);
            }
        }
    }

    pub fn substitute(&self, var: &str, value: &Term) -> Term {
        match self {
            Term::Var(v) if v == var => value.clone(),
            Term::Var(_) | Term::Const(_) => self.clone(),
            Term::Add(ts) => Term::Add(ts.iter().map(|t| t.substitute(var, value)).collect()),
            Term::Mul(ts) => Term::Mul(ts.iter().map(|t| t.substitute(var, value)).collect()),
            Term::Neg(t) => Term::Neg(Box::new(t.substitute(var, value))),
            Term::Pow(t, e) => Term::Pow(Box::new(t.substitute(var, value)), *e),
            Term::Sub(a, b) => Term::minus(a.substitute(var, value), b.substitute(var, value)),
        }
    }

    /// The term as a polynomial over `Z` in the given variables.
    pub fn to_polynomial(&self, names: &[String], ctx: Context) -> Result<Polynomial> {
        Ok(match self {
            Term::Var(v) => match names.iter().position(|n| n == v) {
                Some(i) => Polynomial::var(ctx, i),
                None => return Err(Error::UnboundVariable(v.clone())),
            },
            Term::Const(c) => Polynomial::constant(ctx, c.clone()),
            Term::Add(ts) => {
                let mut acc = Polynomial::zero(ctx);
                for t in ts {
                    acc = &acc + &t.to_polynomial(names, ctx)?;
                }
                acc
            }
            Term::Mul(ts) => {
                let mut acc = Polynomial::one(ctx);
                for t in ts {
                    acc = &acc * &t.to_polynomial(names, ctx)?;
                }
                acc
            }
            Term::Neg(t) => -t.to_polynomial(names, ctx)?,
            Term::Sub(a, b) => &a.to_polynomial(names, ctx)? - &b.to_polynomial(names, ctx)?,
            Term::Pow(t, e) => t.to_polynomial(names, ctx)?.pow(*e),
        })
    }

    /// `p` written as positive part minus negative part, e.g. `(- (^ x 2) x)`.
    pub fn from_polynomial(p: &Polynomial, names: &[String]) -> Term {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for t in p.terms() {
            let mut factors = Vec::new();
            let c = t.coeff.abs();
            if !c.is_one() || t.monomial.is_one() {
                factors.push(Term::Const(c));
            }
            for (i, &e) in t.monomial.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(Term::Var(names[i].clone())),
                    _ => factors.push(Term::Pow(Box::new(Term::Var(names[i].clone())), e)),
                }
            }
            let term = if factors.len() == 1 { factors.pop().unwrap() } else { Term::Mul(factors) };
            if t.coeff.is_negative() {
                neg.push(term);
            } else {
                pos.push(term);
            }
        }
        fn sum(mut ts: Vec<Term>) -> Term {
            if ts.len() == 1 {
                ts.pop().unwrap()
            } else {
                Term::Add(ts)
            }
        }
        match (pos.is_empty(), neg.is_empty()) {
            (true, true) => Term::Const(BigInt::zero()),
            (false, true) => sum(pos),
            (true, false) => Term::Neg(Box::new(sum(neg))),
            (false, false) => Term::minus(sum(pos), sum(neg)),
        }
    }
}

impl Formula {
    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }

    pub fn negate(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn exists(v: &str, f: Formula) -> Formula {
        Formula::Exists(v.into(), Box::new(f))
    }

    pub fn forall(v: &str, f: Formula) -> Formula {
        Formula::Forall(v.into(), Box::new(f))
    }

    /// `∃v1 ... ∃vk f`, innermost last.
    pub fn exists_all(vars: &[String], f: Formula) -> Formula {
        vars.iter().rev().fold(f, |acc, v| Formula::exists(v, acc))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Eq(a, b) => {
                a.vars(out);
                b.vars(out);
            }
            Formula::Not(f) => f.collect_free(out),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.collect_free(out)),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_free(out);
                b.collect_free(out);
            }
            Formula::Exists(v, f) | Formula::Forall(v, f) => {
                let mut inner = BTreeSet::new();
                f.collect_free(&mut inner);
                inner.remove(v);
                out.extend(inner);
            }
        }
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_all(&mut out);
        out
    }

    fn collect_all(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Eq(a, b) => {
                a.vars(out);
                b.vars(out);
            }
            Formula::Not(f) => f.collect_all(out),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.collect_all(out)),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_all(out);
                b.collect_all(out);
            }
            Formula::Exists(v, f) | Formula::Forall(v, f) => {
                out.insert(v.clone());
                f.collect_all(out);
            }
        }
    }

    /// True when every free variable is among `free`.
    pub fn is_well_scoped(&self, free: &[String]) -> bool {
        self.free_vars().iter().all(|v| free.contains(v))
    }

    /// Capture-avoiding substitution of `value` for the free occurrences of
    /// `var`.
    pub fn substitute(&self, var: &str, value: &Term) -> Formula {
        let mut avoid = BTreeSet::new();
        value.vars(&mut avoid);
        self.subst(var, value, &avoid)
    }

    fn subst(&self, var: &str, value: &Term, avoid: &BTreeSet<String>) -> Formula {
        match self {
            Formula::True | Formula::False => self.clone(),
            Formula::Eq(a, b) => Formula::Eq(a.substitute(var, value), b.substitute(var, value)),
            Formula::Not(f) => Formula::negate(f.subst(var, value, avoid)),
            Formula::And(fs) => Formula::And(fs.iter().map(|f| f.subst(var, value, avoid)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|f| f.subst(var, value, avoid)).collect()),
            Formula::Implies(a, b) => Formula::implies(a.subst(var, value, avoid), b.subst(var, value, avoid)),
            Formula::Iff(a, b) => Formula::iff(a.subst(var, value, avoid), b.subst(var, value, avoid)),
            Formula::Exists(v, f) | Formula::Forall(v, f) => {
                if v == var || !f.free_vars().contains(var) {
                    return self.clone();
                }
                let (v2, body) = if avoid.contains(v) {
                    let mut taken = f.all_vars();
                    taken.extend(avoid.iter().cloned());
                    taken.insert(var.to_string());
                    let fresh = fresh_name(v, &taken);
                    let renamed = f.subst(v, &Term::Var(fresh.clone()), &BTreeSet::from([fresh.clone()]));
                    (fresh, renamed)
                } else {
                    (v.clone(), (**f).clone())
                };
                let body = body.subst(var, value, avoid);
                match self {
                    Formula::Exists(..) => Formula::Exists(v2, Box::new(body)),
                    _ => Formula::Forall(v2, Box::new(body)),
                }
            }
        }
    }

    pub fn to_sexpr(&self) -> String {
        format!("{self}")
    }

    pub fn parse(text: &str) -> Result<Formula> {
        sexpr::parse_formula(text)
    }
}

/// `base`, `base'`, `base''`, ... whichever is first outside `taken`.
pub(crate) fn fresh_name(base: &str, taken: &BTreeSet<String>) -> String {
    let mut name = String::from(base);
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}
