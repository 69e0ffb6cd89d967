//! Recursive-descent parser for the polynomial input grammar.
//!
//! ```text
//! expr     := ['-'] term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' natural)?
//! base     := 'x' | 'y' | rational | '(' expr ')'
//! rational := integer ('/' positive-integer)?
//! ```
//!
//! Whitespace is insignificant and implicit multiplication is rejected.
//! A single leading minus sign is accepted so that printed polynomials parse back.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{BiPoly, Q};
use crate::Error;

pub fn parse_poly(text: &str) -> Result<BiPoly, Error> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
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

    fn expr(&mut self) -> Result<BiPoly, Error> {
        let negate = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let first = self.term()?;
        let mut acc = if negate { -&first } else { first };
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

    fn term(&mut self) -> Result<BiPoly, Error> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<BiPoly, Error> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.natural()?;
            let e: u32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<BiPoly, Error> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                self.no_implicit()?;
                Ok(BiPoly::x())
            }
            Some(b'y') => {
                self.pos += 1;
                self.no_implicit()?;
                Ok(BiPoly::y())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.natural()?;
                let mut q = Q::from_integer(num);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let den = self.natural()?;
                    if den.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    q /= Q::from_integer(den);
                }
                self.no_implicit()?;
                Ok(BiPoly::constant(q))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                Err(Error::UnknownVariable { pos: start, name })
            }
            Some(_) => Err(self.err("expected 'x', 'y', a number or '('")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    /// Rejects a letter, digit or '(' glued to the preceding operand.
    fn no_implicit(&mut self) -> Result<(), Error> {
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_alphanumeric() || *c == b'(' => Err(self.err("implicit multiplication is not allowed")),
            _ => Ok(()),
        }
    }

    fn natural(&mut self) -> Result<BigInt, Error> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a natural number"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_terms() {
        let p = parse_poly("x^2 + y^3").unwrap();
        assert_eq!(p, BiPoly::from_int_terms(&[((2, 0), 1), ((0, 3), 1)]));
        assert!(parse_poly("0").unwrap().is_zero());
    }

    #[test]
    fn expands_products() {
        let p = parse_poly("(x+y)^2 - x^2 - 2*x*y").unwrap();
        assert_eq!(p, BiPoly::from_int_terms(&[((0, 2), 1)]));
    }

    #[test]
    fn rationals_and_signs() {
        let p = parse_poly("-3/4*x*y + 1/2").unwrap();
        assert_eq!(p.coeff(1, 1), Q::new((-3).into(), 4.into()));
        assert_eq!(p.coeff(0, 0), Q::new(1.into(), 2.into()));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_poly("2x"), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(parse_poly("x + z"), Err(Error::UnknownVariable { pos: 4, .. })));
        assert!(matches!(parse_poly("x +"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("(x+y"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("1/0"), Err(Error::Syntax { .. })));
    }
}
