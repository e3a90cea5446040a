use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{FiniteRingTable, Formula, Term};
use crate::error::{Error, Result};

const DENSE_MEMO_LIMIT: usize = 1 << 22;

enum CTerm {
    Slot(usize),
    Elem(usize),
    Add(Vec<CTerm>),
    Mul(Vec<CTerm>),
    Neg(Box<CTerm>),
    Sub(Box<CTerm>, Box<CTerm>),
    Pow(Box<CTerm>, u32),
}

enum Node {
    Const(bool),
    Eq(CTerm, CTerm),
    Not(usize),
    And(Vec<usize>),
    Or(Vec<usize>),
    Implies(usize, usize),
    Iff(usize, usize),
    Quant { exists: bool, slot: usize, body: usize, free: Vec<usize> },
}

enum Memo {
    None,
    Dense(Vec<u8>),
    Sparse(BTreeMap<Vec<u16>, bool>),
}

/// A formula compiled against one finite ring. Every quantifier node caches
/// its value per assignment of its free variables, and the cache persists
/// across calls.
pub struct Evaluator<'t> {
    table: &'t FiniteRingTable,
    nodes: Vec<Node>,
    memos: Vec<Memo>,
    root: usize,
    env: Vec<usize>,
    arity: usize,
}

struct Compiler<'t> {
    table: &'t FiniteRingTable,
    nodes: Vec<Node>,
    scope: Vec<String>,
    max_slots: usize,
}

impl Compiler<'_> {
    fn slot(&self, v: &str) -> Result<usize> {
        self.scope.iter().rposition(|s| s == v).ok_or_else(|| Error::UnboundVariable(v.into()))
    }

    fn term(&self, t: &Term) -> Result<CTerm> {
        Ok(match t {
            Term::Var(v) => CTerm::Slot(self.slot(v)?),
            Term::Const(c) => CTerm::Elem(self.table.from_integer(c)),
            Term::Add(ts) => CTerm::Add(ts.iter().map(|t| self.term(t)).collect::<Result<_>>()?),
            Term::Mul(ts) => CTerm::Mul(ts.iter().map(|t| self.term(t)).collect::<Result<_>>()?),
            Term::Neg(t) => CTerm::Neg(Box::new(self.term(t)?)),
            Term::Sub(a, b) => CTerm::Sub(Box::new(self.term(a)?), Box::new(self.term(b)?)),
            Term::Pow(t, e) => CTerm::Pow(Box::new(self.term(t)?), *e),
        })
    }

    fn push(&mut self, n: Node) -> usize {
        self.nodes.push(n);
        self.nodes.len() - 1
    }

    fn formula(&mut self, f: &Formula) -> Result<usize> {
        let node = match f {
            Formula::True => Node::Const(true),
            Formula::False => Node::Const(false),
            Formula::Eq(a, b) => Node::Eq(self.term(a)?, self.term(b)?),
            Formula::Not(g) => Node::Not(self.formula(g)?),
            Formula::And(gs) => Node::And(gs.iter().map(|g| self.formula(g)).collect::<Result<_>>()?),
            Formula::Or(gs) => Node::Or(gs.iter().map(|g| self.formula(g)).collect::<Result<_>>()?),
            Formula::Implies(a, b) => Node::Implies(self.formula(a)?, self.formula(b)?),
            Formula::Iff(a, b) => Node::Iff(self.formula(a)?, self.formula(b)?),
            Formula::Exists(v, g) | Formula::Forall(v, g) => {
                let mut free: Vec<usize> = f.free_vars().iter().map(|v| self.slot(v)).collect::<Result<_>>()?;
                free.sort_unstable();
                let slot = self.scope.len();
                self.scope.push(v.clone());
                self.max_slots = self.max_slots.max(self.scope.len());
                let body = self.formula(g)?;
                self.scope.pop();
                Node::Quant { exists: matches!(f, Formula::Exists(..)), slot, body, free }
            }
        };
        Ok(self.push(node))
    }
}

impl<'t> Evaluator<'t> {
    /// Compiles `phi` with the free variables `free`, in that order.
    pub fn new(phi: &Formula, table: &'t FiniteRingTable, free: &[String]) -> Result<Self> {
        if table.len() > u16::MAX as usize {
            return Err(Error::CapExceeded(u16::MAX as usize));
        }
        let mut c = Compiler { table, nodes: Vec::new(), scope: free.to_vec(), max_slots: free.len() };
        let root = c.formula(phi)?;
        let n = table.len();
        let memos = c
            .nodes
            .iter()
            .map(|node| match node {
                Node::Quant { free, .. } => match n.checked_pow(free.len() as u32) {
                    Some(size) if size <= DENSE_MEMO_LIMIT => Memo::Dense(vec![0; size]),
                    _ => Memo::Sparse(BTreeMap::new()),
                },
                _ => Memo::None,
            })
            .collect();
        Ok(Evaluator { table, nodes: c.nodes, memos, root, env: vec![0; c.max_slots], arity: free.len() })
    }

    pub fn eval(&mut self, values: &[usize]) -> Result<bool> {
        if values.len() != self.arity {
            return Err(Error::ArityMismatch(alloc::format!("{} values for {} variables", values.len(), self.arity)));
        }
        if values.iter().any(|&v| v >= self.table.len()) {
            return Err(Error::ArityMismatch("value outside the ring".into()));
        }
        self.env[..self.arity].copy_from_slice(values);
        Ok(eval_node(self.table, &self.nodes, &mut self.memos, &mut self.env, self.root))
    }
}

fn eval_term(t: &FiniteRingTable, term: &CTerm, env: &[usize]) -> usize {
    match term {
        CTerm::Slot(s) => env[*s],
        CTerm::Elem(e) => *e,
        CTerm::Add(ts) => ts.iter().fold(t.zero(), |acc, x| t.add(acc, eval_term(t, x, env))),
        CTerm::Mul(ts) => ts.iter().fold(t.one(), |acc, x| t.mul(acc, eval_term(t, x, env))),
        CTerm::Neg(x) => t.neg(eval_term(t, x, env)),
        CTerm::Sub(a, b) => t.add(eval_term(t, a, env), t.neg(eval_term(t, b, env))),
        CTerm::Pow(x, e) => t.pow(eval_term(t, x, env), *e),
    }
}

fn eval_node(t: &FiniteRingTable, nodes: &[Node], memos: &mut [Memo], env: &mut [usize], id: usize) -> bool {
    match &nodes[id] {
        Node::Const(b) => *b,
        Node::Eq(a, b) => eval_term(t, a, env) == eval_term(t, b, env),
        Node::Not(g) => !eval_node(t, nodes, memos, env, *g),
        Node::And(gs) => gs.iter().all(|&g| eval_node(t, nodes, memos, env, g)),
        Node::Or(gs) => gs.iter().any(|&g| eval_node(t, nodes, memos, env, g)),
        Node::Implies(a, b) => !eval_node(t, nodes, memos, env, *a) || eval_node(t, nodes, memos, env, *b),
        Node::Iff(a, b) => eval_node(t, nodes, memos, env, *a) == eval_node(t, nodes, memos, env, *b),
        Node::Quant { exists, slot, body, free } => {
            let n = t.len();
            let dense_key = || free.iter().fold(0usize, |acc, &s| acc * n + env[s]);
            match &memos[id] {
                Memo::Dense(m) => match m[dense_key()] {
                    1 => return false,
                    2 => return true,
                    _ => {}
                },
                Memo::Sparse(m) => {
                    let key: Vec<u16> = free.iter().map(|&s| env[s] as u16).collect();
                    if let Some(&v) = m.get(&key) {
                        return v;
                    }
                }
                Memo::None => {}
            }
            let key = dense_key();
            let sparse_key: Vec<u16> = match &memos[id] {
                Memo::Sparse(_) => free.iter().map(|&s| env[s] as u16).collect(),
                _ => Vec::new(),
            };
            let mut value = !*exists;
            for e in 0..n {
                env[*slot] = e;
                if eval_node(t, nodes, memos, env, *body) == *exists {
                    value = *exists;
                    break;
                }
            }
            match &mut memos[id] {
                Memo::Dense(m) => m[key] = if value { 2 } else { 1 },
                Memo::Sparse(m) => {
                    m.insert(sparse_key, value);
                }
                Memo::None => {}
            }
            value
        }
    }
}

/// Truth of `phi` in `table` under `params`, which must bind every free
/// variable.
pub fn eval(phi: &Formula, table: &FiniteRingTable, params: &BTreeMap<String, usize>) -> Result<bool> {
    let free: Vec<String> = phi.free_vars().into_iter().collect();
    let mut values = Vec::with_capacity(free.len());
    for v in &free {
        values.push(*params.get(v).ok_or_else(|| Error::UnboundVariable(v.clone()))?);
    }
    Evaluator::new(phi, table, &free)?.eval(&values)
}

/// All tuples for `vars`, in lexicographic order of element indices, that
/// satisfy `phi` with the remaining free variables fixed by `fixed`.
pub fn defined_set(
    phi: &Formula,
    table: &FiniteRingTable,
    vars: &[String],
    fixed: &BTreeMap<String, usize>,
) -> Result<Vec<Vec<usize>>> {
    let mut free: Vec<String> = vars.to_vec();
    let mut values: Vec<usize> = vec![0; vars.len()];
    for (k, v) in fixed {
        if !vars.contains(k) {
            free.push(k.clone());
            values.push(*v);
        }
    }
    let mut ev = Evaluator::new(phi, table, &free)?;
    let n = table.len();
    let k = vars.len();
    let mut out = Vec::new();
    if n == 0 {
        return Ok(out);
    }
    loop {
        if ev.eval(&values)? {
            out.push(values[..k].to_vec());
        }
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            values[i] += 1;
            if values[i] < n {
                break;
            }
            values[i] = 0;
        }
    }
}
