//! Recursive-descent parser for the canonical string form.

use super::{ParamPolynomial, ParamRational, Rational};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};

struct Parser<'s> {
    s: &'s [u8],
    pos: usize,
}

pub(super) fn parse(input: &str) -> Result<ParamRational> {
    let cleaned: String = input
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| if c == 'κ' { 'k' } else { c })
        .collect();
    let mut p = Parser {
        s: cleaned.as_bytes(),
        pos: 0,
    };
    if p.s.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let v = p.expr()?;
    if p.pos != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!(
            "{msg} at position {} in {:?}",
            self.pos,
            String::from_utf8_lossy(self.s)
        ))
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<ParamRational> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == b'+' { acc + t } else { acc - t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<ParamRational> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let f = self.unary()?;
            acc = if c == b'*' {
                acc * f
            } else {
                acc.checked_div(&f)
                    .map_err(|_| self.err("division by zero"))?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<ParamRational> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<ParamRational> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let e: i32 = std::str::from_utf8(&self.s[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.err("expected an integer exponent"))?;
            let e = if neg { -e } else { e };
            return base
                .powi(e)
                .map_err(|_| self.err("zero to a negative power"));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ParamRational> {
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
            Some(b'a') => {
                self.pos += 1;
                Ok(ParamRational::from_poly(ParamPolynomial::a()))
            }
            Some(b'k') => {
                self.pos += 1;
                Ok(ParamRational::from_poly(ParamPolynomial::k()))
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            _ => Err(self.err("expected a number, 'a', 'k' or '('")),
        }
    }

    fn number(&mut self) -> Result<ParamRational> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let int_part = &self.s[start..self.pos];
        let mut frac_part: &[u8] = &[];
        if self.peek() == Some(b'.') {
            self.pos += 1;
            let fs = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            frac_part = &self.s[fs..self.pos];
        }
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(self.err("malformed number"));
        }
        let digits: String = std::str::from_utf8(int_part)
            .unwrap()
            .chars()
            .chain(std::str::from_utf8(frac_part).unwrap().chars())
            .collect();
        let n: BigInt = digits.parse().unwrap_or_else(|_| BigInt::zero());
        let mut d = BigInt::one();
        for _ in 0..frac_part.len() {
            d *= 10;
        }
        Ok(ParamRational::from_rational(Rational::new(n, d)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_garbage() {
        assert!(parse("a+").is_err());
        assert!(parse("(a").is_err());
        assert!(parse("x").is_err());
        assert!(parse("1/0").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn precedence() {
        assert_eq!(parse("1+2*3").unwrap(), ParamRational::from_int(7));
        assert_eq!(parse("-2^2").unwrap(), ParamRational::from_int(-4));
        assert_eq!(parse("2^-1").unwrap().to_string(), "1/2");
        assert_eq!(parse("6/2/3").unwrap(), ParamRational::from_int(1));
    }
}
