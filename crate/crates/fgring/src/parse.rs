//! The presentation language `ring Z[x, y] / (f1, ..., fm)` and polynomial
//! expressions over named variables.

use std::fmt;
use std::str::FromStr;

use fgring_core::spectrum::RingPresentation;
use fgring_core::{Context, Polynomial};
use num_bigint::BigInt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {} (offset {}): {}", self.line, self.column, self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Line and column of a byte offset in `text`.
pub fn locate(text: &str, offset: usize, message: String) -> ParseError {
    error_at(text, offset, message)
}

fn error_at(text: &str, offset: usize, message: impl Into<String>) -> ParseError {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(before.chars().count(), |i| before[i + 1..].chars().count()) + 1;
    ParseError { offset, line, column, message: message.into() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
    End,
}

struct Lexer<'a> {
    text: &'a str,
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Result<Self, ParseError> {
        let mut toks = Vec::new();
        let mut chars = text.char_indices().peekable();
        while let Some(&(i, c)) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
            } else if c.is_ascii_digit() {
                let mut end = i;
                while let Some(&(j, d)) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    end = j + d.len_utf8();
                    chars.next();
                }
                toks.push((i, Tok::Int(BigInt::from_str(&text[i..end]).expect("digits"))));
            } else if c.is_alphabetic() || c == '_' {
                let mut end = i;
                while let Some(&(j, d)) = chars.peek() {
                    if !(d.is_alphanumeric() || d == '_') {
                        break;
                    }
                    end = j + d.len_utf8();
                    chars.next();
                }
                toks.push((i, Tok::Ident(text[i..end].to_string())));
            } else if "[](),/+-*^".contains(c) {
                toks.push((i, Tok::Sym(c)));
                chars.next();
            } else {
                return Err(error_at(text, i, format!("unexpected character `{c}`")));
            }
        }
        toks.push((text.len(), Tok::End));
        Ok(Lexer { text, toks, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        error_at(self.text, self.offset(), message)
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expr(&mut self, names: &[String], ctx: Context) -> Result<Polynomial, ParseError> {
        let mut acc = self.product(names, ctx)?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.product(names, ctx)?;
            } else if self.eat('-') {
                acc = &acc - &self.product(names, ctx)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self, names: &[String], ctx: Context) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary(names, ctx)?;
        while self.eat('*') {
            acc = &acc * &self.unary(names, ctx)?;
        }
        Ok(acc)
    }

    fn unary(&mut self, names: &[String], ctx: Context) -> Result<Polynomial, ParseError> {
        if self.eat('-') {
            return Ok(-self.unary(names, ctx)?);
        }
        let base = self.atom(names, ctx)?;
        if self.eat('^') {
            let at = self.offset();
            match self.bump() {
                Tok::Int(e) => {
                    let e = u32::try_from(e).map_err(|_| error_at(self.text, at, "exponent too large"))?;
                    return Ok(base.pow(e));
                }
                _ => return Err(error_at(self.text, at, "expected a non-negative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self, names: &[String], ctx: Context) -> Result<Polynomial, ParseError> {
        let at = self.offset();
        match self.bump() {
            Tok::Int(c) => Ok(Polynomial::constant(ctx, c)),
            Tok::Ident(v) => match names.iter().position(|n| *n == v) {
                Some(i) => Ok(Polynomial::var(ctx, i)),
                None => Err(error_at(self.text, at, format!("unknown variable `{v}`"))),
            },
            Tok::Sym('(') => {
                let p = self.expr(names, ctx)?;
                self.expect(')')?;
                Ok(p)
            }
            Tok::End => Err(error_at(self.text, at, "unexpected end of input")),
            Tok::Sym(c) => Err(error_at(self.text, at, format!("unexpected `{c}`"))),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.err("trailing input"))
        }
    }
}

/// Parses `ring Z`, `ring Z[v1, ..., vn]`, optionally followed by
/// `/ (g1, ..., gm)`.
pub fn parse_presentation(text: &str) -> Result<RingPresentation, ParseError> {
    let mut lx = Lexer::new(text)?;
    match lx.bump() {
        Tok::Ident(k) if k == "ring" => {}
        _ => return Err(error_at(text, 0, "expected `ring`")),
    }
    let at = lx.offset();
    match lx.bump() {
        Tok::Ident(z) if z == "Z" => {}
        _ => return Err(error_at(text, at, "expected the coefficient ring `Z`")),
    }
    let mut names: Vec<String> = Vec::new();
    if lx.eat('[') && !lx.eat(']') {
        loop {
            let at = lx.offset();
            match lx.bump() {
                Tok::Ident(v) => {
                    if names.contains(&v) {
                        return Err(error_at(text, at, format!("variable `{v}` declared twice")));
                    }
                    names.push(v);
                }
                _ => return Err(error_at(text, at, "expected a variable name")),
            }
            if lx.eat(']') {
                break;
            }
            lx.expect(',')?;
        }
    }
    let ctx = Context::grevlex(names.len());
    let mut relations = Vec::new();
    if lx.eat('/') {
        lx.expect('(')?;
        if !lx.eat(')') {
            loop {
                relations.push(lx.expr(&names, ctx)?);
                if lx.eat(')') {
                    break;
                }
                lx.expect(',')?;
            }
        }
    }
    lx.finish()?;
    RingPresentation::new(names, relations).map_err(|e| error_at(text, 0, e.to_string()))
}

/// A polynomial expression in the given variable names.
pub fn parse_polynomial(text: &str, names: &[String]) -> Result<Polynomial, ParseError> {
    let mut lx = Lexer::new(text)?;
    let p = lx.expr(names, Context::grevlex(names.len()))?;
    lx.finish()?;
    Ok(p)
}

/// A parenthesised, comma-separated list of polynomials such as `(x, y - 1)`.
pub fn parse_polynomial_list(text: &str, names: &[String]) -> Result<Vec<Polynomial>, ParseError> {
    let mut lx = Lexer::new(text)?;
    let ctx = Context::grevlex(names.len());
    let mut out = Vec::new();
    lx.expect('(')?;
    if !lx.eat(')') {
        loop {
            out.push(lx.expr(names, ctx)?);
            if lx.eat(')') {
                break;
            }
            lx.expect(',')?;
        }
    }
    lx.finish()?;
    Ok(out)
}

/// The canonical text of a presentation; parsing it gives back an equal
/// presentation.
pub fn print_presentation(r: &RingPresentation) -> String {
    let mut out = String::from("ring Z");
    if r.nvars() > 0 {
        out.push('[');
        out.push_str(&r.names().join(", "));
        out.push(']');
    }
    let rels = r.relation_generators();
    if !rels.is_empty() {
        let texts: Vec<String> = rels.iter().map(|g| r.format(g)).collect();
        out.push_str(" / (");
        out.push_str(&texts.join(", "));
        out.push(')');
    }
    out
}
