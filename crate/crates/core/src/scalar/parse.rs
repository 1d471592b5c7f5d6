//! Text grammar for exact scalars.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | atom
//! atom   := integer | 'rho' | 'sqrt' '(' expr ')' | '(' expr ')'
//! ```
//!
//! So `p/q`, `sqrt(p/q)`, `rho`, `1/2 - sqrt(2)` and `-(1/3)*rho*rho` all parse.
//! Angles are written as the rational multiplier of π: `2/3` means `2π/3`.

use num_bigint::BigInt;

use super::{Angle, Mq, Rational};
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_char() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_char(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_char()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn eat_word(&mut self, word: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(word) {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.src))
    }

    fn expr(&mut self) -> Result<Mq> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc + self.term()?;
            } else if self.eat('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Mq> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc * self.unary()?;
            } else if self.eat('/') {
                let rhs = self.unary()?;
                acc = &acc * &rhs.inv()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Mq> {
        if self.eat('-') {
            Ok(-self.unary()?)
        } else {
            self.atom()
        }
    }

    fn atom(&mut self) -> Result<Mq> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while matches!(self.peek_char(), Some(c) if c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let n: BigInt = self.src[start..self.pos]
                    .parse()
                    .map_err(|_| self.error("bad integer"))?;
                Ok(Mq::from_rational(Rational::from_integer(n)))
            }
            _ if self.eat_word("rho") => Ok(Mq::rho()),
            _ if self.eat_word("sqrt") => {
                if !self.eat('(') {
                    return Err(self.error("expected '(' after sqrt"));
                }
                let arg = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                arg.sqrt()
            }
            _ => Err(self.error("unexpected input")),
        }
    }

    fn finish(mut self, value: Mq) -> Result<Mq> {
        if self.peek().is_some() {
            return Err(self.error("trailing input"));
        }
        Ok(value)
    }
}

/// Parse an exact field element.
pub fn parse_mq(src: &str) -> Result<Mq> {
    let mut p = Parser::new(src);
    let v = p.expr()?;
    p.finish(v)
}

/// Parse a rational, e.g. `-3/4`. Radicals are rejected.
pub fn parse_rational(src: &str) -> Result<Rational> {
    let v = parse_mq(src)?;
    v.as_rational()
        .cloned()
        .ok_or_else(|| Error::Parse(format!("{src:?} is not rational")))
}

/// Parse an angle given as its multiplier of π, e.g. `2/3` for `2π/3`.
pub fn parse_angle(src: &str) -> Result<Angle> {
    Ok(Angle::new(parse_rational(src)?))
}
