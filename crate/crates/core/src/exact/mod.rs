//! Exact scalars: rationals, the projective line over a field, first-order
//! jets, Möbius transformations and the rational function field `Q(t)` used
//! to carry one-parameter families of curves.

mod jet;
mod mobius;
mod ratfunc;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use jet::{Jet, JetRecord};
pub use mobius::Mobius;
pub use ratfunc::{Poly, RatFunc};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always kept in lowest terms.
pub type Rational = num_rational::BigRational;

/// The scalar operations the curve and embedding code needs.
///
/// Implemented for [`Rational`] and for [`RatFunc`]; the embedding is written
/// once against this trait and instantiated for both.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Field for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
        + Neg<Output = T>
{
}

/// A point of the projective line: a finite field element or `∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Extended<F> {
    Finite(F),
    Infinity,
}

/// A rational point of the projective line.
pub type ExtendedScalar = Extended<Rational>;

impl<F> Extended<F> {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Extended::Infinity)
    }

    pub fn finite(&self) -> Option<&F> {
        match self {
            Extended::Finite(x) => Some(x),
            Extended::Infinity => None,
        }
    }

    pub fn map<G>(&self, f: impl FnOnce(&F) -> G) -> Extended<G> {
        match self {
            Extended::Finite(x) => Extended::Finite(f(x)),
            Extended::Infinity => Extended::Infinity,
        }
    }
}

impl<F> From<F> for Extended<F> {
    fn from(x: F) -> Self {
        Extended::Finite(x)
    }
}

impl fmt::Display for Extended<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(x) => write!(f, "{x}"),
            Extended::Infinity => f.write_str("inf"),
        }
    }
}

/// Shorthand for the rational `num/den`. Panics on a zero denominator.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integer-valued rational.
pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

/// Parses `p/q` or `p`. Rejects zero denominators.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((p, d)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Parses a projective-line coordinate: a rational or the string `inf`.
pub fn parse_extended(s: &str) -> Result<ExtendedScalar> {
    if s.trim() == "inf" {
        Ok(Extended::Infinity)
    } else {
        parse_rational(s).map(Extended::Finite)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_strings() {
        assert_eq!(format_rational(&q(6, -4)), "-3/2");
        assert_eq!(format_rational(&qi(5)), "5");
        assert_eq!(parse_rational("-3/2").unwrap(), q(-3, 2));
        assert_eq!(parse_rational(" 4 ").unwrap(), qi(4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(parse_extended("inf").unwrap(), Extended::Infinity);
        assert_eq!(Extended::Finite(q(1, 3)).to_string(), "1/3");
    }

    #[test]
    fn rationals_are_reduced() {
        let x = q(10, -4);
        assert_eq!(x.numer(), &BigInt::from(-5));
        assert_eq!(x.denom(), &BigInt::from(2));
    }
}
