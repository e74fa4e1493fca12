//! Arbitrary-precision rationals, re-exported from `num` with the parsing
//! and construction helpers the rest of the crate uses.

use super::ArithError;
use num::bigint::BigInt;

/// Exact rational number, always stored reduced with positive denominator
/// (the `num` crate maintains both invariants).
pub type Rat = num::rational::BigRational;

/// `n/d` as a reduced rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `p`, `p/q`, or a sign-prefixed variant thereof.
pub fn parse_rat(s: &str) -> Result<Rat, ArithError> {
    let t = s.trim();
    let bad = || ArithError::BadLiteral(s.to_string());
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if num::Zero::is_zero(&q) {
                return Err(ArithError::DivisionByZero);
            }
            Ok(Rat::new(p, q))
        }
        None => {
            let p: BigInt = t.parse().map_err(|_| bad())?;
            Ok(Rat::from_integer(p))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        for s in ["0", "7", "-3", "1/2", "-5/3"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(r.to_string(), s);
        }
        // non-canonical inputs reduce
        assert_eq!(parse_rat("4/6").unwrap(), rat(2, 3));
        assert_eq!(parse_rat("3/-6").unwrap(), rat(-1, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }
}
