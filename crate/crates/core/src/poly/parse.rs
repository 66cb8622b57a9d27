//! Text syntax: `3/2*x^2*y - y + 1`, with parentheses and integer powers.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{Coeff, Poly, Ring};
use crate::error::{Error, Result};

struct Parser<'a> {
    ring: &'a Arc<Ring>,
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {}", self.pos))
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

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero(self.ring);
        let mut first = true;
        loop {
            let negative = if self.eat(b'-') {
                true
            } else {
                let plus = self.eat(b'+');
                if !first && !plus {
                    return Ok(acc);
                }
                false
            };
            let t = self.term()?;
            acc = if negative { &acc - &t } else { &acc + &t };
            first = false;
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        while self.eat(b'*') {
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.factor()?;
        if self.eat(b'^') {
            self.skip_ws();
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.error("expected exponent"));
            }
            let e: u32 = digits
                .parse()
                .map_err(|_| self.error("exponent out of range"))?;
            if e > self.ring.budget().max_degree.saturating_mul(4) {
                return Err(Error::Budget(format!(
                    "exponent {e} exceeds the degree budget"
                )));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn factor(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.power()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().parse().unwrap();
                let mut value = Coeff::from_integer(num);
                if self.eat(b'/') {
                    self.skip_ws();
                    let d = self.digits();
                    if d.is_empty() {
                        return Err(self.error("expected denominator"));
                    }
                    let den: BigInt = d.parse().unwrap();
                    if den == BigInt::from(0) {
                        return Err(self.error("zero denominator"));
                    }
                    value /= Coeff::from_integer(den);
                }
                if !self.ring.admits(&value) {
                    return Err(self.error("denominator divisible by the characteristic"));
                }
                Ok(Poly::constant(self.ring, value))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = core::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.ring.var_index(name) {
                    Some(i) => Ok(Poly::var(self.ring, i)),
                    None => Err(Error::Parse(format!("unknown variable {name:?}"))),
                }
            }
            Some(c) => Err(self.error(&format!("unexpected {:?}", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

pub fn parse_poly(ring: &Arc<Ring>, text: &str) -> Result<Poly> {
    let mut p = Parser {
        ring,
        src: text.as_bytes(),
        pos: 0,
    };
    let f = p.expr()?;
    if p.peek().is_some() {
        return Err(p.error("trailing input"));
    }
    Ok(f)
}

/// Comma-separated list; commas inside parentheses do not split.
pub fn parse_poly_list(ring: &Arc<Ring>, text: &str) -> Result<Vec<Poly>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(parse_poly(ring, &text[start..i])?);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(parse_poly(ring, &text[start..])?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn round_trip_display() {
        let r = Ring::new(0, &["x", "y"]).unwrap();
        let f = parse_poly(&r, "3/2*x^2*y - y + 1").unwrap();
        assert_eq!(f.to_string(), "3/2*x^2*y - y + 1");
        assert_eq!(parse_poly(&r, &f.to_string()).unwrap(), f);
        let g = parse_poly(&r, "(x+y)*(x-y)").unwrap();
        assert_eq!(g, parse_poly(&r, "x^2 - y^2").unwrap());
        assert_eq!(parse_poly_list(&r, "x, (x+1)*(y), 0").unwrap().len(), 3);
        assert!(parse_poly(&r, "z").is_err());
        assert!(parse_poly(&r, "x +").is_err());
    }

    #[test]
    fn characteristic_two() {
        let r = Ring::new(2, &["x"]).unwrap();
        assert_eq!(
            parse_poly(&r, "(x+1)^2").unwrap(),
            parse_poly(&r, "x^2+1").unwrap()
        );
        assert!(parse_poly(&r, "1/2").is_err());
    }
}
