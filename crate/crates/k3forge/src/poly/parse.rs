use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{MultiPoly, PolyError, Scalar};

// expr   := term (('+'|'-') term)*
// term   := unary (('*'|'/') unary)*
// unary  := '-' unary | power
// power  := atom ('^' int)?
// atom   := number | ident | '(' expr ')'
struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> PolyError {
        PolyError::Parse {
            pos: self.pos,
            msg: msg.into(),
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

    fn expr(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                b'/' => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    let c = d.as_constant().ok_or(PolyError::Parse {
                        pos: at,
                        msg: "division by a non-constant".into(),
                    })?;
                    if c.is_zero() {
                        return Err(PolyError::Parse {
                            pos: at,
                            msg: "division by zero".into(),
                        });
                    }
                    acc = acc.scale(&c.recip());
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly, PolyError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        if self.peek() == Some(b'+') {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<MultiPoly, PolyError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            let n: u32 = digits.parse().map_err(|_| self.err("expected a non-negative exponent"))?;
            if n > super::MAX_TOTAL_DEGREE {
                return Err(PolyError::DegreeCap(n));
            }
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let n: BigInt = digits.parse().map_err(|_| self.err("bad integer"))?;
                Ok(MultiPoly::constant(Scalar::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_' || self.src[self.pos] == b'\'')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(MultiPoly::var(name))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

impl FromStr for MultiPoly {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let out = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        out.check_degree()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q;

    #[test]
    fn rational_coefficients() {
        let f: MultiPoly = "3/2*u^2*v - 1/3".parse().unwrap();
        assert_eq!(f.coefficient(&[("u", 2), ("v", 1)]), q(3, 2));
        assert_eq!(f.constant_term(), q(-1, 3));
    }

    #[test]
    fn parentheses_and_unary_minus() {
        let f: MultiPoly = "-(u - v)^2".parse().unwrap();
        assert_eq!(f.to_string(), "-u^2 + 2*u*v - v^2");
    }

    #[test]
    fn round_trip() {
        for s in ["0", "1", "-7/5*u^3*w + y^2 - X*Y*Z", "eta^2 - xi^4*u*v + 1/2*e3"] {
            let f: MultiPoly = s.parse().unwrap();
            let g: MultiPoly = f.to_string().parse().unwrap();
            assert_eq!(f, g);
            assert_eq!(f.to_string(), g.to_string());
        }
    }

    #[test]
    fn errors_carry_position() {
        match "u + * v".parse::<MultiPoly>() {
            Err(PolyError::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!("u/v".parse::<MultiPoly>().is_err());
        assert!("u/0".parse::<MultiPoly>().is_err());
        assert!(matches!("u^65".parse::<MultiPoly>(), Err(PolyError::DegreeCap(65))));
        assert!("(u".parse::<MultiPoly>().is_err());
    }
}
