use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use super::{Formula, Term};
use crate::error::{Error, Result};

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Const(c) => write!(f, "{c}"),
            Term::Add(ts) => list(f, "+", ts),
            Term::Mul(ts) => list(f, "*", ts),
            Term::Neg(t) => write!(f, "(- {t})"),
            Term::Sub(a, b) => write!(f, "(- {a} {b})"),
            Term::Pow(t, e) => write!(f, "(^ {t} {e})"),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Eq(a, b) => write!(f, "(= {a} {b})"),
            Formula::Not(g) => write!(f, "(not {g})"),
            Formula::And(gs) => list(f, "and", gs),
            Formula::Or(gs) => list(f, "or", gs),
            Formula::Implies(a, b) => write!(f, "(-> {a} {b})"),
            Formula::Iff(a, b) => write!(f, "(<-> {a} {b})"),
            Formula::Exists(v, g) => write!(f, "(exists {v} {g})"),
            Formula::Forall(v, g) => write!(f, "(forall {v} {g})"),
        }
    }
}

fn list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, head: &str, items: &[T]) -> fmt::Result {
    write!(f, "({head}")?;
    for item in items {
        write!(f, " {item}")?;
    }
    f.write_str(")")
}

#[derive(Clone, Debug, PartialEq)]
enum Tok<'a> {
    Open,
    Close,
    Atom(&'a str),
}

struct Parser<'a> {
    toks: Vec<(usize, Tok<'a>)>,
    pos: usize,
    end: usize,
}

fn tokenize(text: &str) -> Vec<(usize, Tok<'_>)> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' => {
                out.push((i, Tok::Open));
                i += 1;
            }
            b')' => {
                out.push((i, Tok::Close));
                i += 1;
            }
            c if c.is_ascii_whitespace() => i += 1,
            _ => {
                let start = i;
                while i < bytes.len() && !bytes[i].is_ascii_whitespace() && bytes[i] != b'(' && bytes[i] != b')' {
                    i += 1;
                }
                out.push((start, Tok::Atom(&text[start..i])));
            }
        }
    }
    out
}

fn syntax(offset: usize, message: impl Into<String>) -> Error {
    Error::Syntax { offset, message: message.into() }
}

const RESERVED: [&str; 7] = ["true", "false", "and", "or", "not", "exists", "forall"];

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
        && !RESERVED.contains(&s)
}

impl<'a> Parser<'a> {
    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn next(&mut self) -> Result<Tok<'a>> {
        let t =
            self.toks.get(self.pos).map(|t| t.1.clone()).ok_or_else(|| syntax(self.end, "unexpected end of input"))?;
        self.pos += 1;
        Ok(t)
    }

    fn peek(&self) -> Option<&Tok<'a>> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn close(&mut self) -> Result<()> {
        let off = self.offset();
        match self.next()? {
            Tok::Close => Ok(()),
            _ => Err(syntax(off, "expected `)`")),
        }
    }

    fn ident(&mut self) -> Result<String> {
        let off = self.offset();
        match self.next()? {
            Tok::Atom(a) if is_ident(a) => Ok(a.into()),
            _ => Err(syntax(off, "expected a variable name")),
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let off = self.offset();
        match self.next()? {
            Tok::Atom("true") => Ok(Formula::True),
            Tok::Atom("false") => Ok(Formula::False),
            Tok::Atom(_) => Err(syntax(off, "expected a formula")),
            Tok::Close => Err(syntax(off, "unexpected `)`")),
            Tok::Open => {
                let hoff = self.offset();
                let head = match self.next()? {
                    Tok::Atom(h) => h,
                    _ => return Err(syntax(hoff, "expected a connective")),
                };
                let f = match head {
                    "=" => {
                        let a = self.term()?;
                        let b = self.term()?;
                        Formula::Eq(a, b)
                    }
                    "not" => Formula::negate(self.formula()?),
                    "and" | "or" => {
                        let mut items = Vec::new();
                        while self.peek() != Some(&Tok::Close) {
                            items.push(self.formula()?);
                        }
                        if head == "and" {
                            Formula::And(items)
                        } else {
                            Formula::Or(items)
                        }
                    }
                    "->" | "<->" => {
                        let a = self.formula()?;
                        let b = self.formula()?;
                        if head == "->" {
                            Formula::implies(a, b)
                        } else {
                            Formula::iff(a, b)
                        }
                    }
                    "exists" | "forall" => {
                        let v = self.ident()?;
                        let body = Box::new(self.formula()?);
                        if head == "exists" {
                            Formula::Exists(v, body)
                        } else {
                            Formula::Forall(v, body)
                        }
                    }
                    _ => return Err(syntax(hoff, alloc::format!("unknown connective `{head}`"))),
                };
                self.close()?;
                Ok(f)
            }
        }
    }

    fn term(&mut self) -> Result<Term> {
        let off = self.offset();
        match self.next()? {
            Tok::Atom(a) => {
                if is_ident(a) {
                    Ok(Term::Var(a.into()))
                } else {
                    a.parse::<BigInt>().map(Term::Const).map_err(|_| syntax(off, alloc::format!("bad term `{a}`")))
                }
            }
            Tok::Close => Err(syntax(off, "unexpected `)`")),
            Tok::Open => {
                let hoff = self.offset();
                let head = match self.next()? {
                    Tok::Atom(h) => h,
                    _ => return Err(syntax(hoff, "expected an operator")),
                };
                let t = match head {
                    "+" | "*" => {
                        let mut items = Vec::new();
                        while self.peek() != Some(&Tok::Close) {
                            items.push(self.term()?);
                        }
                        if head == "+" {
                            Term::Add(items)
                        } else {
                            Term::Mul(items)
                        }
                    }
                    "-" => {
                        let a = self.term()?;
                        if self.peek() == Some(&Tok::Close) {
                            Term::Neg(Box::new(a))
                        } else {
                            Term::minus(a, self.term()?)
                        }
                    }
                    "^" => {
                        let base = self.term()?;
                        let eoff = self.offset();
                        let e = match self.next()? {
                            Tok::Atom(e) => e.parse::<u32>().map_err(|_| syntax(eoff, "bad exponent"))?,
                            _ => return Err(syntax(eoff, "bad exponent")),
                        };
                        Term::Pow(Box::new(base), e)
                    }
                    _ => return Err(syntax(hoff, alloc::format!("unknown operator `{head}`"))),
                };
                self.close()?;
                Ok(t)
            }
        }
    }
}

pub(crate) fn parse_formula(text: &str) -> Result<Formula> {
    let mut p = Parser { toks: tokenize(text), pos: 0, end: text.len() };
    let f = p.formula()?;
    if p.pos != p.toks.len() {
        return Err(syntax(p.offset(), "trailing input"));
    }
    Ok(f)
}

pub(crate) fn parse_term(text: &str) -> Result<Term> {
    let mut p = Parser { toks: tokenize(text), pos: 0, end: text.len() };
    let t = p.term()?;
    if p.pos != p.toks.len() {
        return Err(syntax(p.offset(), "trailing input"));
    }
    Ok(t)
}

impl Term {
    pub fn parse(text: &str) -> Result<Term> {
        parse_term(text)
    }
}
