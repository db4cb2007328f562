//! Parser for the plain-text polynomial format written by `Display`.
//!
//! ```text
//! poly   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := int ['/' int] | var ['^' ['-'] int]
//! ```

use alloc::format;
use alloc::vec::Vec;
use core::str::FromStr;

use num_bigint::BigInt;

use super::{LaurentPoly, Monomial, Rational, VarId};
use crate::{Error, Result};

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..]
                .chars()
                .next()
                .map_or(1, char::len_utf8);
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let n = rest.find(|c: char| !f(c)).unwrap_or(rest.len());
        self.pos += n;
        &rest[..n]
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in {:?}", self.pos, self.src))
    }

    fn integer(&mut self) -> Result<BigInt> {
        let digits = self.take_while(|c| c.is_ascii_digit());
        if digits.is_empty() {
            return Err(self.err("expected digits"));
        }
        BigInt::from_str(digits).map_err(|_| self.err("bad integer"))
    }

    fn term(&mut self) -> Result<(Monomial, Rational)> {
        let mut coeff = Rational::one();
        let mut mono = Monomial::ONE;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let n = self.integer()?;
                    let value = if self.eat('/') {
                        Rational::from_parts(n, self.integer()?)?
                    } else {
                        Rational::from_bigint(n)
                    };
                    coeff *= &value;
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
                    let v = VarId::from_name(name)
                        .ok_or_else(|| self.err(&format!("unknown variable {name:?}")))?;
                    let mut e = 1i32;
                    if self.eat('^') {
                        let neg = self.eat('-');
                        let k = self.integer()?;
                        let k = i32::try_from(k).map_err(|_| self.err("exponent out of range"))?;
                        e = if neg { -k } else { k };
                    }
                    mono = mono.mul(&Monomial::var(v, e));
                }
                _ => return Err(self.err("expected a number or variable")),
            }
            if !self.eat('*') {
                return Ok((mono, coeff));
            }
        }
    }
}

/// Parses a Laurent polynomial such as `3/2*a^2*t - r^-3 + 1`.
pub fn parse_poly(src: &str) -> Result<LaurentPoly> {
    let mut cur = Cursor { src, pos: 0 };
    let mut terms = Vec::new();
    if cur.peek().is_none() {
        return Err(cur.err("empty input"));
    }
    let mut negate = cur.eat('-');
    loop {
        let (m, c) = cur.term()?;
        terms.push((m, if negate { -c } else { c }));
        match cur.peek() {
            None => break,
            Some('+') => {
                cur.eat('+');
                negate = false;
            }
            Some('-') => {
                cur.eat('-');
                negate = true;
            }
            Some(_) => return Err(cur.err("expected '+' or '-'")),
        }
    }
    Ok(LaurentPoly::from_terms(terms))
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_poly(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn roundtrip_display() {
        for s in ["0", "1", "-1/2", "a^2*t - 3/2*x + 1", "c^-1*r^-3*u + 7*y^4"] {
            let p = parse_poly(s).unwrap();
            assert_eq!(parse_poly(&p.to_string()).unwrap(), p, "{s}");
        }
    }

    #[test]
    fn combines_like_terms() {
        let p = parse_poly("x + 2*x - 3 * x").unwrap();
        assert!(p.is_zero());
        assert_eq!(parse_poly("2*3/4*r*r").unwrap().to_string(), "3/2*r^2");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_poly("").is_err());
        assert!(parse_poly("z").is_err());
        assert!(parse_poly("x +").is_err());
        assert!(parse_poly("1/0").is_err());
        assert!(parse_poly("x^").is_err());
    }
}
