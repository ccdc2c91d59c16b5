//! Recursive-descent parser for the expression language.
//!
//! ```text
//! expr     := term (("+" | "-") term)*
//! term     := unary (("*" | "/") unary)*
//! unary    := "-" unary | power
//! power    := primary ("^" exponent)?
//! exponent := INT | "n" | "(" INT ")" | "(" "n" ("-" INT)? ")"
//! primary  := INT | "g" | "d" | "r"
//!           | "H" | "delta" | "delta_prime" | "fund"
//!           | "P" "(" INT ")" | "D" "(" INT "," INT ")"
//!           | "eta" "(" ("{" ints? "}" | ints?) ")"
//!           | ("integrate" | "pushforward1" | "pullback1") "(" expr ")"
//!           | "(" expr ")"
//! ints     := INT ("," INT)*
//! ```
//!
//! Whitespace is ignored. `·` is accepted for `*` and `−` for `-`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::ast::{Atom, Exponent, Expr, Func};
use crate::error::{Error, Result};
use crate::poly::Symbol;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Punct(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
}

fn syntax(offset: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        offset,
        message: message.into(),
    }
}

impl Lexer {
    fn new(src: &str) -> Result<Self> {
        let mut toks = Vec::new();
        let mut chars = src.char_indices().peekable();
        while let Some(&(pos, c)) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
            } else if c.is_ascii_digit() {
                let mut end = pos;
                while let Some(&(p, c)) = chars.peek() {
                    if !c.is_ascii_digit() {
                        break;
                    }
                    end = p + c.len_utf8();
                    chars.next();
                }
                let v: BigInt = src[pos..end].parse().expect("digits");
                toks.push((Tok::Int(v), pos));
            } else if c.is_ascii_alphabetic() || c == '_' {
                let mut end = pos;
                while let Some(&(p, c)) = chars.peek() {
                    if !(c.is_ascii_alphanumeric() || c == '_') {
                        break;
                    }
                    end = p + c.len_utf8();
                    chars.next();
                }
                toks.push((Tok::Ident(src[pos..end].to_string()), pos));
            } else {
                let c = match c {
                    '·' => '*',
                    '−' => '-',
                    c => c,
                };
                if !"+-*/^(),{}".contains(c) {
                    return Err(syntax(pos, format!("unexpected character `{c}`")));
                }
                toks.push((Tok::Punct(c), pos));
                chars.next();
            }
        }
        toks.push((Tok::End, src.len()));
        Ok(Lexer { toks })
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Punct(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{c}`")))
        }
    }

    fn unexpected(&self, wanted: &str) -> Error {
        let found = match self.peek() {
            Tok::Int(v) => format!("`{v}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Punct(c) => format!("`{c}`"),
            Tok::End => "end of input".to_string(),
        };
        syntax(self.offset(), format!("expected {wanted}, found {found}"))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.primary()?;
        if self.eat('^') {
            let e = self.exponent()?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn small_int(&mut self, what: &str) -> Result<usize> {
        let offset = self.offset();
        match self.peek().clone() {
            Tok::Int(v) => {
                self.bump();
                v.to_usize()
                    .filter(|&v| v <= u32::MAX as usize)
                    .ok_or_else(|| syntax(offset, format!("{what} `{v}` is too large")))
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn exponent(&mut self) -> Result<Exponent> {
        match self.peek() {
            Tok::Int(_) => Ok(Exponent::Int(self.small_int("an exponent")? as u32)),
            Tok::Ident(s) if s == "n" => {
                self.bump();
                Ok(Exponent::AmbientMinus(0))
            }
            Tok::Punct('(') => {
                self.bump();
                let e = match self.peek() {
                    Tok::Int(_) => Exponent::Int(self.small_int("an exponent")? as u32),
                    Tok::Ident(s) if s == "n" => {
                        self.bump();
                        if self.eat('-') {
                            Exponent::AmbientMinus(self.small_int("an integer")? as u32)
                        } else {
                            Exponent::AmbientMinus(0)
                        }
                    }
                    _ => return Err(self.unexpected("an integer or `n`")),
                };
                self.expect(')')?;
                Ok(e)
            }
            _ => Err(self.unexpected("an exponent")),
        }
    }

    fn index_list(&mut self, close: char) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        if *self.peek() == Tok::Punct(close) {
            return Ok(out);
        }
        loop {
            out.push(self.small_int("an index")?);
            if !self.eat(',') {
                return Ok(out);
            }
        }
    }

    fn primary(&mut self) -> Result<Expr> {
        let offset = self.offset();
        match self.peek().clone() {
            Tok::Int(v) => {
                self.bump();
                Ok(Expr::Num(v))
            }
            Tok::Punct('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.bump();
                if let Some(s) = Symbol::from_name(&name) {
                    return Ok(Expr::Symbol(s));
                }
                if let Some(func) = Func::from_name(&name) {
                    self.expect('(')?;
                    let arg = self.expr()?;
                    self.expect(')')?;
                    return Ok(Expr::Call(func, Box::new(arg)));
                }
                let atom = match name.as_str() {
                    "H" => Atom::H,
                    "delta" => Atom::Delta,
                    "delta_prime" => Atom::DeltaPrime,
                    "fund" => Atom::Fund,
                    "P" => {
                        self.expect('(')?;
                        let i = self.small_int("an index")?;
                        self.expect(')')?;
                        Atom::Point(i)
                    }
                    "D" => {
                        self.expect('(')?;
                        let i = self.small_int("an index")?;
                        self.expect(',')?;
                        let j = self.small_int("an index")?;
                        self.expect(')')?;
                        Atom::Diagonal(i, j)
                    }
                    "eta" => {
                        self.expect('(')?;
                        let set = if self.eat('{') {
                            let set = self.index_list('}')?;
                            self.expect('}')?;
                            set
                        } else {
                            self.index_list(')')?
                        };
                        self.expect(')')?;
                        Atom::Eta(set)
                    }
                    "n" => {
                        return Err(syntax(offset, "`n` may only appear in exponents"));
                    }
                    _ => return Err(syntax(offset, format!("unknown name `{name}`"))),
                };
                Ok(Expr::Atom(atom))
            }
            _ => Err(self.unexpected("an expression")),
        }
    }
}

/// Parses an expression; the whole input must be consumed.
pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser {
        toks: Lexer::new(src)?.toks,
        pos: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(e)
}
