//! Recursive-descent parser for the polynomial grammar
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' nat)?
//! base     := variable | rational | '(' expr ')'
//! rational := int ('/' nat)?
//! ```
//!
//! Whitespace is ignored and there is no implicit multiplication. A leading
//! `-` on an expression or parenthesized group is accepted as `0 - ...`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::CoefficientField;

use super::MultiPoly;

/// Parses `text` over `field` using the given variable names (in order).
pub fn parse_multi(text: &str, field: CoefficientField, variables: &[&str]) -> Result<MultiPoly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        field,
        variables,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: CoefficientField,
    variables: &'a [&'a str],
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.to_string(),
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let negate = self.eat(b'-');
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly> {
        let base = self.base()?;
        if self.eat(b'^') {
            let e = self.nat()?;
            let e: u32 = e.try_into().map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<MultiPoly> {
        let nvars = self.variables.len();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.nat_big()?;
                if self.eat(b'/') {
                    let den = self.nat_big()?;
                    let c = self.field.from_ratio(&num, &den).map_err(|e| match e {
                        Error::DivisionByZero => self.error("zero denominator"),
                        other => other,
                    })?;
                    Ok(MultiPoly::constant(c, nvars))
                } else {
                    Ok(MultiPoly::constant(self.field.from_bigint(&num), nvars))
                }
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match self.variables.iter().position(|v| *v == name) {
                    Some(i) => Ok(MultiPoly::var(self.field, nvars, i)),
                    None => {
                        self.pos = start;
                        Err(self.error(&format!("unknown variable '{name}'")))
                    }
                }
            }
            Some(_) => Err(self.error("expected a variable, number or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn nat_big(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a natural number"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let n: BigInt = digits.parse().expect("digits");
        // "2X": a number directly followed by a letter is implicit multiplication
        if self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            return Err(self.error("implicit multiplication is not allowed"));
        }
        Ok(n)
    }

    fn nat(&mut self) -> Result<u64> {
        let n = self.nat_big()?;
        n.try_into().map_err(|_| self.error("number too large"))
    }
}
