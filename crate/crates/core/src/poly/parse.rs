//! Recursive-descent parser for the ASCII polynomial grammar.
//!
//! Terms are joined by `+`/`-`; a term is `coef`, `coef*mono`, or `mono`;
//! `coef` is `int`, `int/int`, or a parenthesized rational; `mono` is `var`,
//! `var^k`, or products joined by `*`. Whitespace is insignificant.

use super::{Monomial, Poly, PolyError, RingRef};
use crate::arith::{Coeff, Rat};
use num::bigint::BigInt;

pub fn parse_poly<F: Coeff>(text: &str, ring: &RingRef) -> Result<Poly<F>, PolyError> {
    let mut p = Parser { bytes: text.as_bytes(), pos: 0, ring };
    let poly = p.parse_sum()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("trailing input"));
    }
    Ok(poly)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    ring: &'a RingRef,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> PolyError {
        PolyError::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn parse_sum<F: Coeff>(&mut self) -> Result<Poly<F>, PolyError> {
        let mut acc = Poly::zero(self.ring);
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                None if first => {
                    return Err(self.err("empty polynomial"));
                }
                None => break,
                Some(_) if first => false,
                Some(_) => return Err(self.err("expected `+` or `-` between terms")),
            };
            let term = self.parse_term()?;
            acc = if sign { acc.sub(&term) } else { acc.add(&term) };
            first = false;
            if self.peek().is_none() {
                break;
            }
        }
        Ok(acc)
    }

    fn parse_term<F: Coeff>(&mut self) -> Result<Poly<F>, PolyError> {
        let mut coeff: Option<Rat> = None;
        let mut expo = vec![0u32; self.ring.arity()];
        let mut any_factor = false;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    if any_factor {
                        return Err(self.err("numeric coefficient must come first in a term"));
                    }
                    coeff = Some(self.parse_rational()?);
                    any_factor = true;
                }
                Some(b'(') => {
                    if any_factor {
                        return Err(self.err("parenthesized coefficient must come first in a term"));
                    }
                    self.pos += 1;
                    let inner = self.parse_signed_rational()?;
                    if self.bump() != Some(b')') {
                        return Err(self.err("expected `)`"));
                    }
                    coeff = Some(inner);
                    any_factor = true;
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let (idx, exp) = self.parse_var_power()?;
                    expo[idx] += exp;
                    any_factor = true;
                }
                _ => return Err(self.err("expected coefficient or variable")),
            }
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                }
                _ => break,
            }
        }
        if !any_factor {
            return Err(self.err("empty term"));
        }
        let c = coeff.unwrap_or_else(|| Rat::from_integer(BigInt::from(1)));
        let mut out = Poly::zero(self.ring);
        out.add_term(Monomial(expo), F::from_rat(&c));
        Ok(out)
    }

    fn parse_signed_rational(&mut self) -> Result<Rat, PolyError> {
        let neg = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let r = self.parse_rational()?;
        Ok(if neg { -r } else { r })
    }

    fn parse_rational(&mut self) -> Result<Rat, PolyError> {
        let n = self.parse_int()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let start = self.pos;
            let d = self.parse_int()?;
            if num::Zero::is_zero(&d) {
                self.pos = start;
                return Err(self.err("zero denominator"));
            }
            Ok(Rat::new(n, d))
        } else {
            Ok(Rat::from_integer(n))
        }
    }

    fn parse_int(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected integer"));
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        s.parse().map_err(|_| self.err("bad integer"))
    }

    fn parse_var_power(&mut self) -> Result<(usize, u32), PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        let idx = self.ring.var_index(name).ok_or(PolyError::UnknownVariable {
            name: name.to_string(),
            pos: start,
        })?;
        let mut exp = 1u32;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.parse_int()?;
            exp = e
                .try_into()
                .map_err(|_| self.err("exponent out of range"))?;
        }
        Ok((idx, exp))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_i};
    use crate::poly::Ring;

    #[test]
    fn parses_paper_generators() {
        let ring = Ring::new(vec!["x1", "x2", "x3", "x4"]);
        let f1: Poly<Rat> = parse_poly("x2^2 - x1 - x4", &ring).unwrap();
        assert_eq!(f1.num_terms(), 3);
        assert_eq!(f1.coeff_of(&Monomial(vec![0, 2, 0, 0])), rat_i(1));
        assert_eq!(f1.coeff_of(&Monomial(vec![1, 0, 0, 0])), rat_i(-1));
        assert_eq!(f1.coeff_of(&Monomial(vec![0, 0, 0, 1])), rat_i(-1));

        let f2: Poly<Rat> = parse_poly("-2*x4*x2 - 2*x3^2 - (1/5)*x2*x3", &ring).unwrap();
        assert_eq!(f2.num_terms(), 3);
        assert_eq!(f2.coeff_of(&Monomial(vec![0, 1, 1, 0])), rat(-1, 5));
        assert_eq!(f2.coeff_of(&Monomial(vec![0, 1, 0, 1])), rat_i(-2));
        assert_eq!(f2.coeff_of(&Monomial(vec![0, 0, 2, 0])), rat_i(-2));
    }

    #[test]
    fn parses_zero_and_errors() {
        let ring = Ring::new(vec!["x", "y"]);
        let z: Poly<Rat> = parse_poly("0", &ring).unwrap();
        assert!(z.is_zero());
        assert!(matches!(
            parse_poly::<Rat>("x + w", &ring),
            Err(PolyError::UnknownVariable { ref name, .. }) if name == "w"
        ));
        assert!(matches!(parse_poly::<Rat>("x + ", &ring), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse_poly::<Rat>("1/0", &ring), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse_poly::<Rat>("", &ring), Err(PolyError::Syntax { .. })));
    }

    #[test]
    fn print_parse_round_trip() {
        let ring = Ring::new(vec!["x", "y", "z"]);
        for src in [
            "x^2*y - 3*z + 1/2",
            "-x - y - z",
            "2*x*y*z - z^4",
            "(7/3)*x^10 + y",
        ] {
            let p: Poly<Rat> = parse_poly(src, &ring).unwrap();
            let printed = p.to_string();
            let q: Poly<Rat> = parse_poly(&printed, &ring).unwrap();
            assert_eq!(p, q, "round trip through `{printed}`");
        }
    }
}
