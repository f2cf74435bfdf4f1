//! Exact arithmetic over Z and Q.

mod multipoly;
mod parse;
mod resultant;
mod unipoly;

pub use multipoly::{Assignment, MultiPoly};
pub use resultant::{bareiss_det, discriminant, resultant};
pub use unipoly::UniPoly;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// A polynomial variable. `Var(0)` is the parameter `t`, `Var(k)` is `x_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub u32);

impl Var {
    pub const T: Var = Var(0);

    pub fn x(k: u32) -> Var {
        assert!(k >= 1, "x variables are numbered from 1");
        Var(k)
    }

    pub fn parse(s: &str) -> Option<Var> {
        match s {
            "t" => Some(Var::T),
            "x" => Some(Var(1)),
            _ => {
                let rest = s.strip_prefix('x')?;
                if rest.is_empty() || rest.starts_with('0') || !rest.bytes().all(|b| b.is_ascii_digit()) {
                    return None;
                }
                rest.parse::<u32>().ok().map(Var)
            }
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            write!(f, "t")
        } else {
            write!(f, "x{}", self.0)
        }
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// Parses `a`, `-a`, or `a/b`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = |msg: &str| Error::Parse { offset: 0, msg: format!("{msg}: {s:?}") };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad("bad numerator"))?;
    let d: BigInt = den.parse().map_err(|_| bad("bad denominator"))?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(n, d))
}

/// `a` or `a/b` in lowest terms with positive denominator.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact square root of a non-negative integer, if it is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn var_names() {
        assert_eq!(Var::parse("t"), Some(Var::T));
        assert_eq!(Var::parse("x"), Some(Var(1)));
        assert_eq!(Var::parse("x12"), Some(Var(12)));
        assert_eq!(Var::parse("x0"), None);
        assert_eq!(Var::parse("x01"), None);
        assert_eq!(Var::parse("y"), None);
        assert_eq!(Var(3).to_string(), "x3");
    }

    #[test]
    fn rationals_round_trip() {
        for s in ["0", "-7/4", "5", "1/4", "-29/16"] {
            assert_eq!(fmt_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(fmt_rational(&parse_rational("6/-4").unwrap()), "-3/2");
        assert_eq!(parse_rational("1/0"), Err(Error::DivisionByZero));
        assert!(parse_rational("a/2").is_err());
    }

    #[test]
    fn perfect_squares() {
        assert_eq!(exact_sqrt(&BigInt::from(16)), Some(BigInt::from(4)));
        assert_eq!(exact_sqrt(&BigInt::from(15)), None);
        assert_eq!(exact_sqrt(&BigInt::from(-4)), None);
        assert_eq!(exact_sqrt(&BigInt::from(0)), Some(BigInt::from(0)));
    }
}
