//! Recursive-descent reader for the canonical polynomial syntax:
//! `+ - * / ^`, parentheses, integer literals and identifiers. Division is
//! only accepted by nonzero constants, so `1/5*c1^5` and `(c1^5)/5` both work.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{AlgebraError, Polynomial, Universe};

type Poly = Polynomial<BigRational>;

pub fn parse_polynomial(src: &str, universe: &Arc<Universe>) -> Result<Poly, AlgebraError> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        universe,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty expression"));
    }
    let out = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    universe: &'a Arc<Universe>,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> AlgebraError {
        AlgebraError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly, AlgebraError> {
        let mut acc = self.product()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.product()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.product()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Poly, AlgebraError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.unary()?;
                if !d.is_constant() || d.is_zero() {
                    self.pos = at;
                    return Err(self.error("division by a non-constant or zero"));
                }
                let inv = BigRational::one() / d.constant_term();
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Poly, AlgebraError> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly, AlgebraError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| self.error("exponent out of range"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, AlgebraError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<Poly, AlgebraError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Some(b'0'..=b'9') => {
                let n = self.integer()?;
                if n.is_zero() {
                    return Ok(Poly::zero(self.universe));
                }
                Ok(Poly::constant(self.universe, BigRational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match self.universe.index_of(name) {
                    Some(i) => Ok(Poly::var_at(self.universe, i)),
                    None => {
                        self.pos = start;
                        Err(AlgebraError::UnknownVariable(name.to_string()))
                    }
                }
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_powers() {
        let u = Universe::new([("a", 2), ("b", 2)]).unwrap();
        let p = parse_polynomial("(a + b)^2 - 2*a*b", &u).unwrap();
        assert_eq!(p, parse_polynomial("a^2 + b^2", &u).unwrap());
        assert_eq!(parse_polynomial("-(a - b)", &u).unwrap().to_string(), "-a + b");
        assert_eq!(parse_polynomial("a/2 + 1/2*a", &u).unwrap().to_string(), "a");
    }

    #[test]
    fn errors() {
        let u = Universe::new([("a", 2)]).unwrap();
        assert_eq!(
            parse_polynomial("a + z", &u),
            Err(AlgebraError::UnknownVariable("z".into()))
        );
        assert!(matches!(parse_polynomial("a +", &u), Err(AlgebraError::Parse { .. })));
        assert!(matches!(parse_polynomial("(a", &u), Err(AlgebraError::Parse { .. })));
    }
}
