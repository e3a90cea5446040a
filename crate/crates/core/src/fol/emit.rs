use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{fresh_name, Formula, Term};
use crate::error::{Error, Result};
use crate::spectrum::RingPresentation;

/// `∀u ∃v ∃w ((1 - x u) v = 1 + w ∧ φ(w))`, defining the Jacobson radical of
/// the ideal defined by `φ` in the variable `var`.
///
/// The bound names default to `u`, `v`, `w` and are primed when they clash
/// with a free variable of `φ` or with `x`.
pub fn emit_jac(phi: &Formula, var: &str, x: &str) -> Result<Formula> {
    let free = phi.free_vars();
    if !free.contains(var) {
        return Err(Error::ArityMismatch(format!("`{var}` is not free in the formula")));
    }
    if x != var && free.contains(x) {
        return Err(Error::ArityMismatch(format!("`{x}` is already a parameter of the formula")));
    }
    let mut taken = free.clone();
    taken.remove(var);
    taken.insert(x.into());
    let u = fresh_name("u", &taken);
    taken.insert(u.clone());
    let v = fresh_name("v", &taken);
    taken.insert(v.clone());
    let w = fresh_name("w", &taken);
    let phi_w = phi.substitute(var, &Term::var(&w));
    let lhs = Term::times(Term::minus(Term::int(1), Term::times(Term::var(x), Term::var(&u))), Term::var(&v));
    let rhs = Term::plus(Term::int(1), Term::var(&w));
    let body = Formula::And(alloc::vec![Formula::eq(lhs, rhs), phi_w]);
    Ok(Formula::forall(&u, Formula::exists(&v, Formula::exists(&w, body))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kronecker {
    /// `γ_n(x, y1..yn)`: `x` lies in the ideal generated by the `y_i`.
    Gamma,
    /// `Jac_n(x, y1..yn)`: `x` lies in the Jacobson radical of that ideal.
    Jac,
    /// `π_n(y1..y_{n+1})`.
    Prime,
    /// `μ_n(y1..y_{n+1})`.
    Maximal,
    /// `Π_n(x, y1..y_{n+1})`.
    Member,
    /// `π°_n = π_n ∧ ¬μ_n`.
    NonMaximalPrime,
}

impl Kronecker {
    pub const ALL: [Kronecker; 6] = [
        Kronecker::Gamma,
        Kronecker::Jac,
        Kronecker::Prime,
        Kronecker::Maximal,
        Kronecker::Member,
        Kronecker::NonMaximalPrime,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Kronecker::Gamma => "gamma",
            Kronecker::Jac => "jac",
            Kronecker::Prime => "pi",
            Kronecker::Maximal => "mu",
            Kronecker::Member => "Pi",
            Kronecker::NonMaximalPrime => "pi_circ",
        }
    }

    pub fn from_name(name: &str) -> Option<Kronecker> {
        Kronecker::ALL.into_iter().find(|k| k.name() == name)
    }
}

fn ys(count: usize) -> Vec<String> {
    (1..=count).map(|i| format!("y{i}")).collect()
}

/// The free variables of `emit_kronecker(n, which)` in argument order.
pub fn kronecker_slots(n: usize, which: Kronecker) -> Vec<String> {
    match which {
        Kronecker::Gamma | Kronecker::Jac => core::iter::once(String::from("x")).chain(ys(n)).collect(),
        Kronecker::Member => core::iter::once(String::from("x")).chain(ys(n + 1)).collect(),
        Kronecker::Prime | Kronecker::Maximal | Kronecker::NonMaximalPrime => ys(n + 1),
    }
}

/// `∃z1 ... ∃zn (x = y1 z1 + ... + yn zn)`; `x = 0` when `n = 0`.
fn gamma(n: usize) -> Formula {
    let zs: Vec<String> = (1..=n).map(|i| format!("z{i}")).collect();
    let sum = match n {
        0 => Term::int(0),
        _ => Term::Add(ys(n).iter().zip(&zs).map(|(y, z)| Term::times(Term::var(y), Term::var(z))).collect()),
    };
    Formula::exists_all(&zs, Formula::eq(Term::var("x"), sum))
}

fn jac(n: usize) -> Formula {
    emit_jac(&gamma(n), "x", "x").expect("x is free in gamma")
}

pub fn emit_kronecker(n: usize, which: Kronecker) -> Formula {
    let j = || jac(n + 1);
    let at = |t: Term| j().substitute("x", &t);
    let (v, w) = (Term::var("v"), Term::var("w"));
    match which {
        Kronecker::Gamma => gamma(n),
        Kronecker::Jac => jac(n),
        Kronecker::Member => j(),
        Kronecker::Prime => Formula::forall(
            "v",
            Formula::forall(
                "w",
                Formula::implies(at(Term::times(v.clone(), w.clone())), Formula::Or(alloc::vec![at(v), at(w)])),
            ),
        ),
        Kronecker::Maximal => Formula::forall(
            "v",
            Formula::exists(
                "w",
                Formula::Or(alloc::vec![at(v.clone()), at(Term::minus(Term::int(1), Term::times(v, w)))]),
            ),
        ),
        Kronecker::NonMaximalPrime => Formula::And(alloc::vec![
            emit_kronecker(n, Kronecker::Prime),
            Formula::negate(emit_kronecker(n, Kronecker::Maximal)),
        ]),
    }
}

/// `P1(x) = 0 ∧ ... ∧ Pm(x) = 0` for the relations of `r`, in its variable
/// names; `true` when there are none and the atom itself when there is one.
pub fn emit_morphism_formula(r: &RingPresentation) -> Formula {
    let mut atoms: Vec<Formula> = r
        .relation_generators()
        .iter()
        .map(|p| Formula::eq(Term::from_polynomial(p, r.names()), Term::int(0)))
        .collect();
    match atoms.len() {
        0 => Formula::True,
        1 => atoms.pop().unwrap(),
        _ => Formula::And(atoms),
    }
}
