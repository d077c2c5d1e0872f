//! Reading field elements back from text.
//!
//! Accepts the canonical serialization plus ordinary infix input:
//! `+ - * / ^`, parentheses, integers and the symbols `x1..x8`, `h`
//! (or `hbar`) and `q2..q7`.

use alloc::string::ToString;

use num_bigint::BigInt;

use super::field::FieldElem;
use super::poly::{Var, MAX_N};
use crate::error::Error;

pub fn parse_field_elem(s: &str) -> Result<FieldElem, Error> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<FieldElem, Error> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<FieldElem, Error> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                b'/' => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    acc = acc.div(&d).map_err(|_| Error::Parse {
                        pos: at,
                        msg: "division by zero".to_string(),
                    })?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<FieldElem, Error> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<FieldElem, Error> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let e = self.integer()?;
            let e: i32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
            let at = self.pos;
            return base.pow(if neg { -e } else { e }).map_err(|_| Error::Parse {
                pos: at,
                msg: "zero to a negative power".to_string(),
            });
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let digits = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        BigInt::parse_bytes(digits.as_bytes(), 10).ok_or_else(|| self.err("bad integer"))
    }

    fn atom(&mut self) -> Result<FieldElem, Error> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => Ok(FieldElem::from_integer(self.integer()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let word = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                self.pos = start;
                let v = symbol(word).ok_or_else(|| self.err("unknown symbol"))?;
                self.pos += word.len();
                Ok(FieldElem::var(v))
            }
            _ => Err(self.err("expected a number, symbol or '('")),
        }
    }
}

/// Resolves a symbol name such as `x3`, `h`, `hbar` or `q2`.
pub fn symbol(word: &str) -> Option<Var> {
    if word == "h" || word == "hbar" {
        return Some(Var::Hbar);
    }
    let (head, idx) = word.split_at(1.min(word.len()));
    let i: usize = idx.parse().ok()?;
    match head {
        "x" if (1..=MAX_N).contains(&i) => Some(Var::X(i as u8)),
        "q" if (2..MAX_N).contains(&i) => Some(Var::Q(i as u8)),
        _ => None,
    }
}
