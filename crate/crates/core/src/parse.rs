//! Text grammar for polynomials:
//!
//! ```text
//! expr   := sign? term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | power
//! power  := atom ('^' integer)*
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Integer literals may be arbitrarily long; they are reduced modulo p as they are read.

use std::sync::Arc;

use crate::error::ParseError;
use crate::poly::{PolyRing, Polynomial};

pub fn parse_polynomial(text: &str, ring: &Arc<PolyRing>) -> Result<Polynomial, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ring,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Arc<PolyRing>,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn syntax(&self, message: &str) -> ParseError {
        ParseError::Syntax {
            pos: self.pos,
            message: message.to_string(),
        }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            Some(b'-') => {
                self.pos += 1;
                -&self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let start = self.pos;
            let rhs = self.factor()?;
            acc = acc
                .checked_mul(&rhs)
                .map_err(|_| ParseError::ExponentOverflow { pos: start })?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-&self.factor()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let mut base = self.atom()?;
        while self.peek() == Some(b'^') {
            self.pos += 1;
            let start = self.pos;
            self.skip_ws();
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.syntax("expected a nonnegative integer exponent"));
            }
            let n: u32 = std::str::from_utf8(digits)
                .unwrap()
                .parse()
                .map_err(|_| ParseError::ExponentOverflow { pos: start })?;
            let max = base
                .terms()
                .iter()
                .flat_map(|t| t.0.exponents().iter().copied())
                .max()
                .unwrap_or(0);
            if (max as u64) * (n as u64) > u32::MAX as u64 {
                return Err(ParseError::ExponentOverflow { pos: start });
            }
            base = base.pow(n as u64);
        }
        Ok(base)
    }

    fn digits(&mut self) -> &[u8] {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.syntax("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let p = self.ring.characteristic() as u64;
                let value = self
                    .digits()
                    .iter()
                    .fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p);
                Ok(Polynomial::constant(self.ring, value as i64))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.ring.var_index(name) {
                    Some(i) => Ok(Polynomial::var(self.ring, i)),
                    None => Err(ParseError::UnknownVariable {
                        name: name.to_string(),
                        pos: start,
                    }),
                }
            }
            Some(_) => Err(self.syntax("expected a number, variable or `(`")),
            None => Err(self.syntax("unexpected end of input")),
        }
    }
}
