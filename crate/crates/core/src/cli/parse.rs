//! The `.sys` text format.
//!
//! One statement per line (or separated by `;`): `p = q` or `p /= q`.
//! Unknowns are a letter optionally followed by digits; `x` is the
//! independent variable. Derivatives are written with apostrophes (`y''`)
//! or as `y^(k)`. Unknowns are numbered in alphabetical order unless an
//! `unknowns a, b, ...` statement fixes them. `#` starts a comment.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::coeff::{Coeff, Rat};
use crate::poly::{Poly, Var};
use crate::systems::DiffSystem;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Prime,
    Caret,
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    Slash,
    Eq,
    Neq,
    Comma,
    Semi,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn err(message: impl Into<String>, line: usize, column: usize) -> Error {
    Error::Parse {
        message: message.into(),
        line,
        column,
    }
}

fn lex_line(text: &str, line: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        let push = |out: &mut Vec<Token>, tok| out.push(Token { tok, line, column });
        match c {
            '#' => break,
            ' ' | '\t' | '\r' => {}
            '0'..='9' => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..=i].iter().collect();
                push(&mut out, Tok::Num(s.parse().unwrap()));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                while i + 1 < chars.len() && (chars[i + 1].is_ascii_alphanumeric() || chars[i + 1] == '_') {
                    i += 1;
                }
                push(&mut out, Tok::Ident(chars[start..=i].iter().collect()));
            }
            '\'' => push(&mut out, Tok::Prime),
            '^' => push(&mut out, Tok::Caret),
            '(' => push(&mut out, Tok::LParen),
            ')' => push(&mut out, Tok::RParen),
            '+' => push(&mut out, Tok::Plus),
            '-' => push(&mut out, Tok::Minus),
            '*' => push(&mut out, Tok::Star),
            ',' => push(&mut out, Tok::Comma),
            ';' => push(&mut out, Tok::Semi),
            '=' => push(&mut out, Tok::Eq),
            '/' if chars.get(i + 1) == Some(&'=') => {
                push(&mut out, Tok::Neq);
                i += 1;
            }
            '!' if chars.get(i + 1) == Some(&'=') => {
                push(&mut out, Tok::Neq);
                i += 1;
            }
            '/' => push(&mut out, Tok::Slash),
            _ => return Err(err(format!("unexpected character '{c}'"), line, column)),
        }
        i += 1;
    }
    Ok(out)
}

fn is_unknown_name(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic()) && cs.all(|c| c.is_ascii_digit())
}

/// Alphabetical order, with numeric suffixes compared as numbers.
fn name_key(s: &str) -> (String, u64) {
    let letters: String = s.chars().take_while(|c| c.is_ascii_alphabetic()).collect();
    let digits: String = s.chars().skip_while(|c| c.is_ascii_alphabetic()).collect();
    (letters, digits.parse().unwrap_or(0))
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    names: &'a [String],
    end: (usize, usize),
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |t| (t.line, t.column))
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T> {
        let (l, c) = self.here();
        Err(err(message, l, c))
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let n = n.clone();
                self.pos += 1;
                Ok(n)
            }
            _ => self.fail("expected an integer"),
        }
    }

    fn small(&mut self) -> Result<u32> {
        let n = self.int()?;
        u32::try_from(n).or_else(|_| self.fail("exponent too large"))
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = if self.eat(&Tok::Minus) {
            -self.term()?
        } else {
            self.eat(&Tok::Plus);
            self.term()?
        };
        loop {
            if self.eat(&Tok::Plus) {
                acc = &acc + &self.term()?;
            } else if self.eat(&Tok::Minus) {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(&Tok::Star) {
                acc = &acc * &self.factor()?;
            } else if self.eat(&Tok::Slash) {
                let d = self.factor()?;
                match d.constant_value() {
                    Some(c) if !c.is_zero() => acc = acc.scale(&c.inv()),
                    _ => return self.fail("division by a non-constant or zero"),
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        if self.eat(&Tok::Minus) {
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if self.eat(&Tok::Caret) {
            let e = if self.eat(&Tok::LParen) {
                let e = self.small()?;
                if !self.eat(&Tok::RParen) {
                    return self.fail("expected ')'");
                }
                e
            } else {
                self.small()?
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        let (line, column) = self.here();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Poly::constant(Coeff::from(Rat::from_integer(n))))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return self.fail("expected ')'");
                }
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let mut order = 0usize;
                while self.eat(&Tok::Prime) {
                    order += 1;
                }
                if order == 0
                    && self.peek() == Some(&Tok::Caret)
                    && self.toks.get(self.pos + 1).map(|t| &t.tok) == Some(&Tok::LParen)
                {
                    self.pos += 2;
                    order = self.small()? as usize;
                    if !self.eat(&Tok::RParen) {
                        return self.fail("expected ')'");
                    }
                }
                if name == "x" {
                    if order > 0 {
                        return Err(err("derivative of the independent variable x", line, column));
                    }
                    return Ok(Poly::x());
                }
                match self.names.iter().position(|n| *n == name) {
                    Some(j) => Ok(Poly::var(Var::jet(j, order))),
                    None => Err(err(format!("unknown symbol '{name}'"), line, column)),
                }
            }
            _ => self.fail("expected a number, an unknown or '('"),
        }
    }
}

/// Parses a system in the `.sys` format.
pub fn parse(source: &str) -> Result<DiffSystem> {
    let mut statements: Vec<Vec<Token>> = Vec::new();
    let mut declared: Option<Vec<String>> = None;
    for (k, text) in source.lines().enumerate() {
        let toks = lex_line(text, k + 1)?;
        let parts = toks.split(|t| t.tok == Tok::Semi).map(|t| t.to_vec());
        for t in parts.into_iter().filter(|t| !t.is_empty()) {
            if matches!(&t[0].tok, Tok::Ident(s) if s == "unknowns") {
                if declared.is_some() {
                    return Err(err("unknowns declared twice", t[0].line, t[0].column));
                }
                let mut names = Vec::new();
                for (i, tok) in t[1..].iter().enumerate() {
                    match (&tok.tok, i % 2) {
                        (Tok::Ident(s), 0) if is_unknown_name(s) && s != "x" => names.push(s.clone()),
                        (Tok::Comma, 1) => {}
                        _ => return Err(err("malformed unknowns declaration", tok.line, tok.column)),
                    }
                }
                declared = Some(names);
            } else {
                statements.push(t);
            }
        }
    }
    let names = match declared {
        Some(n) => n,
        None => {
            let mut found = BTreeSet::new();
            for t in statements.iter().flatten() {
                if let Tok::Ident(s) = &t.tok {
                    if s != "x" && is_unknown_name(s) {
                        found.insert(s.clone());
                    }
                }
            }
            let mut names: Vec<String> = found.into_iter().collect();
            names.sort_by_key(|s| name_key(s));
            names
        }
    };
    let mut equations = Vec::new();
    let mut inequations = Vec::new();
    for t in &statements {
        let last = t.last().unwrap();
        let mut p = Parser {
            toks: t,
            pos: 0,
            names: &names,
            end: (last.line, last.column + 1),
        };
        let lhs = p.expr()?;
        let is_eq = if p.eat(&Tok::Eq) {
            true
        } else if p.eat(&Tok::Neq) {
            false
        } else {
            return p.fail("expected '=' or '/='");
        };
        let rhs = p.expr()?;
        if p.pos < t.len() {
            return p.fail("unexpected input after the statement");
        }
        let poly = &lhs - &rhs;
        if is_eq {
            equations.push(poly);
        } else {
            inequations.push(poly);
        }
    }
    Ok(DiffSystem::new(names, equations, inequations))
}

/// Prints a system so that [`parse`] reads it back unchanged.
pub fn print(s: &DiffSystem) -> String {
    let mut out = String::new();
    let present = s.present();
    let mut inferred = s.names.clone();
    inferred.sort_by_key(|n| name_key(n));
    if present.len() != s.names.len() || inferred != s.names {
        out.push_str(&format!("unknowns {}\n", s.names.join(", ")));
    }
    for p in &s.equations {
        out.push_str(&format!("{} = 0\n", s.show(p)));
    }
    for p in &s.inequations {
        out.push_str(&format!("{} /= 0\n", s.show(p)));
    }
    out
}
