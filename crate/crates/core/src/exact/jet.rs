use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{format_rational, parse_rational, Rational};
use crate::error::Result;

/// A first-order jet `primal + tangent·ε` with `ε² = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Jet {
    pub primal: Rational,
    pub tangent: Rational,
}

impl Jet {
    pub fn new(primal: Rational, tangent: Rational) -> Self {
        Jet { primal, tangent }
    }

    /// A jet with zero tangent part.
    pub fn constant(primal: Rational) -> Self {
        Jet { primal, tangent: Rational::zero() }
    }

    /// The jet `x + ε`.
    pub fn variable(x: Rational) -> Self {
        Jet { primal: x, tangent: Rational::one() }
    }

    /// Division, or `None` when the divisor's primal part vanishes.
    pub fn checked_div(&self, rhs: &Jet) -> Option<Jet> {
        if rhs.primal.is_zero() {
            return None;
        }
        let primal = &self.primal / &rhs.primal;
        let tangent =
            (&self.tangent * &rhs.primal - &self.primal * &rhs.tangent) / (&rhs.primal * &rhs.primal);
        Some(Jet { primal, tangent })
    }
}

impl Zero for Jet {
    fn zero() -> Self {
        Jet::constant(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.primal.is_zero() && self.tangent.is_zero()
    }
}

impl One for Jet {
    fn one() -> Self {
        Jet::constant(Rational::one())
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        Jet { primal: self.primal + rhs.primal, tangent: self.tangent + rhs.tangent }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        Jet { primal: self.primal - rhs.primal, tangent: self.tangent - rhs.tangent }
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let tangent = &self.primal * &rhs.tangent + &self.tangent * &rhs.primal;
        Jet { primal: self.primal * rhs.primal, tangent }
    }
}

impl Div for Jet {
    type Output = Jet;
    /// Panics when the divisor has zero primal part; use [`Jet::checked_div`]
    /// where that can happen.
    fn div(self, rhs: Jet) -> Jet {
        self.checked_div(&rhs).expect("division by a jet with zero primal part")
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet { primal: -self.primal, tangent: -self.tangent }
    }
}

impl fmt::Display for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}ε", self.primal, self.tangent)
    }
}

/// Wire form of a jet: `{"primal": "p/q", "tangent": "r/s"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JetRecord {
    pub primal: String,
    pub tangent: String,
}

impl From<&Jet> for JetRecord {
    fn from(j: &Jet) -> Self {
        JetRecord { primal: format_rational(&j.primal), tangent: format_rational(&j.tangent) }
    }
}

impl JetRecord {
    pub fn to_jet(&self) -> Result<Jet> {
        Ok(Jet::new(parse_rational(&self.primal)?, parse_rational(&self.tangent)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qi};

    #[test]
    fn product_rule() {
        let u = Jet::new(qi(3), qi(2));
        let v = Jet::new(q(1, 2), qi(-1));
        let w = u.clone() * v.clone();
        assert_eq!(w.primal, q(3, 2));
        assert_eq!(w.tangent, qi(3) * qi(-1) + q(1, 2) * qi(2));
    }

    #[test]
    fn division_needs_invertible_primal() {
        let u = Jet::new(qi(1), qi(1));
        assert!(u.checked_div(&Jet::new(qi(0), qi(1))).is_none());
        let r = u.checked_div(&Jet::new(qi(2), qi(0))).unwrap();
        assert_eq!(r, Jet::new(q(1, 2), q(1, 2)));
    }

    #[test]
    fn wire_round_trip() {
        let j = Jet::new(q(-1, 3), q(5, 7));
        let rec = JetRecord::from(&j);
        assert_eq!(serde_json::to_string(&rec).unwrap(), r#"{"primal":"-1/3","tangent":"5/7"}"#);
        assert_eq!(rec.to_jet().unwrap(), j);
    }
}
