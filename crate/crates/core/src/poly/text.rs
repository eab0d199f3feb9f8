//! Plain-text polynomials: `a1*b1 - s*t`, `3/2*x^2 + y - 1`.

use num_bigint::BigInt;
use num_traits::One;

use super::monomial::{Monomial, VariableSet};
use super::order::MonomialOrder;
use super::polynomial::{Coeff, Polynomial};
use crate::error::{Error, Result};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
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

    fn number(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected a number"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits"))
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() || *c == b'_' => self.pos += 1,
            _ => return None,
        }
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        Some(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii ident"))
    }
}

/// Parses the text format into a polynomial sorted under `ord`.
pub fn parse_polynomial(s: &str, vars: &VariableSet, ord: &MonomialOrder) -> Result<Polynomial> {
    let mut cur = Cursor {
        src: s.as_bytes(),
        pos: 0,
    };
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let sign = if cur.eat(b'-') {
            -1
        } else if cur.eat(b'+') || first {
            1
        } else {
            break;
        };
        first = false;
        let (c, m) = parse_term(&mut cur, vars)?;
        terms.push((if sign < 0 { -c } else { c }, m));
        if cur.peek().is_none() {
            break;
        }
    }
    if cur.peek().is_some() {
        return Err(Error::parse(cur.pos, "unexpected character"));
    }
    if terms.is_empty() {
        return Err(Error::parse(0, "empty polynomial"));
    }
    Ok(Polynomial::from_terms(terms, ord))
}

fn parse_term(cur: &mut Cursor<'_>, vars: &VariableSet) -> Result<(Coeff, Monomial)> {
    let mut coeff = Coeff::one();
    let mut mono = Monomial::one(vars.len());
    loop {
        match cur.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = cur.number()?;
                let den = if cur.eat(b'/') {
                    let d = cur.number()?;
                    if d == BigInt::from(0) {
                        return Err(Error::parse(cur.pos, "zero denominator"));
                    }
                    d
                } else {
                    BigInt::one()
                };
                coeff *= Coeff::new(num, den);
            }
            _ => {
                let at = cur.pos;
                let name = cur
                    .ident()
                    .ok_or_else(|| Error::parse(at, "expected a number or a variable"))?;
                let v = vars
                    .index(name)
                    .ok_or_else(|| Error::parse(at, format!("unknown variable `{name}`")))?;
                let e = if cur.eat(b'^') {
                    let n = cur.number()?;
                    u32::try_from(n).map_err(|_| Error::parse(cur.pos, "exponent too large"))?
                } else {
                    1
                };
                mono.0[v] += e;
            }
        }
        if !cur.eat(b'*') {
            break;
        }
    }
    Ok((coeff, mono))
}
