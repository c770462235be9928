//! Recursive-descent reader for polynomial expressions as they are printed
//! in the literature: `q^6 (w-1) (x y-1) + q^4 (-w^2xy^2 z + w^2)`.
//!
//! Juxtaposition multiplies, every letter is its own variable (`xy` is
//! `x*y`), `q` is the coefficient variable and is the only symbol that may
//! carry a negative exponent (`q^-2`, `q^{-2}` or `q^(-2)`).

use super::{MultiPoly, VAR_NAMES};
use crate::error::{Error, Result};
use crate::exactq::{Coeff, Laurent};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

pub(super) fn parse<C: Coeff, const N: usize>(src: &str) -> Result<MultiPoly<C, N>> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
    };
    let out = p.expr::<C, N>()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
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

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer out of range"))
    }

    fn expr<C: Coeff, const N: usize>(&mut self) -> Result<MultiPoly<C, N>> {
        let mut acc = MultiPoly::zero();
        let mut negative = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let t = self.term::<C, N>()?;
            acc = if negative { acc - t } else { acc + t };
            if self.eat(b'+') {
                negative = false;
            } else if self.eat(b'-') {
                negative = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<C: Coeff, const N: usize>(&mut self) -> Result<MultiPoly<C, N>> {
        let mut acc = self.power::<C, N>()?;
        loop {
            if self.eat(b'*') {
                acc = acc * self.power::<C, N>()?;
                continue;
            }
            match self.peek() {
                Some(b) if b == b'(' || b.is_ascii_alphanumeric() => {
                    acc = acc * self.power::<C, N>()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        let close = if self.eat(b'{') {
            Some(b'}')
        } else if self.eat(b'(') {
            Some(b')')
        } else {
            None
        };
        let neg = self.eat(b'-');
        let v = self.integer()?;
        if let Some(c) = close {
            if !self.eat(c) {
                return Err(self.err("unclosed exponent"));
            }
        }
        Ok(if neg { -v } else { v })
    }

    fn power<C: Coeff, const N: usize>(&mut self) -> Result<MultiPoly<C, N>> {
        let is_q = self.peek() == Some(b'q');
        let base = self.atom::<C, N>()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let e = self.exponent()?;
        if is_q {
            return Ok(MultiPoly::q_pow(e));
        }
        if e < 0 {
            return Err(self.err("negative exponent on a polynomial variable"));
        }
        Ok(base.pow(e as u32))
    }

    fn atom<C: Coeff, const N: usize>(&mut self) -> Result<MultiPoly<C, N>> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr::<C, N>()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(b) if b.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let c: C = text.parse().map_err(|_| self.err("bad integer literal"))?;
                Ok(MultiPoly::constant(Laurent::constant(c)))
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(MultiPoly::q_pow(1))
            }
            Some(b) if b.is_ascii_alphabetic() => {
                let name = (b as char).to_string();
                match VAR_NAMES[..N].iter().position(|v| *v == name) {
                    Some(i) => {
                        self.pos += 1;
                        Ok(MultiPoly::var(i))
                    }
                    None => Err(self.err(&format!("unknown variable {name:?}"))),
                }
            }
            _ => Err(self.err("expected a factor")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::MultiPoly;
    use num_bigint::BigInt;

    type P4 = MultiPoly<BigInt, 4>;

    #[test]
    fn juxtaposition_and_braced_exponents() {
        let a = P4::parse("q^{-2}xy^2 (w-1)").unwrap();
        let b = P4::parse("q^-2*x*y^2*w - q^(-2)*x*y*y").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_garbage() {
        assert!(P4::parse("x +").is_err());
        assert!(P4::parse("v").is_err());
        assert!(P4::parse("x^-1").is_err());
        assert!(P4::parse("(x").is_err());
        assert!(MultiPoly::<BigInt, 3>::parse("w").is_err());
    }
}
