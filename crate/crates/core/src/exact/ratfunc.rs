use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Jet, Rational};

/// A polynomial in `t` over the rationals, coefficients in increasing degree
/// with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly(Vec<Rational>);

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        Poly::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.0.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    fn lead(&self) -> &Rational {
        self.0.last().expect("leading coefficient of the zero polynomial")
    }

    /// Order of vanishing at `t = 0`; `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.0.iter().map(|x| x * c).collect())
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::default();
        }
        let mut v = vec![Rational::zero(); k];
        v.extend(self.0.iter().cloned());
        Poly(v)
    }

    /// Divides by `t^k`; the low coefficients must vanish.
    fn unshift(&self, k: usize) -> Poly {
        debug_assert!(self.0.iter().take(k).all(Zero::is_zero));
        Poly::new(self.0.iter().skip(k).cloned().collect())
    }

    pub fn div_rem(&self, rhs: &Poly) -> (Poly, Poly) {
        assert!(!rhs.is_zero(), "polynomial division by zero");
        let dr = rhs.0.len() - 1;
        let mut rem = self.0.clone();
        if rem.len() <= dr {
            return (Poly::default(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dr];
        let lead = rhs.lead();
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dr] / lead;
            if !c.is_zero() {
                for (j, r) in rhs.0.iter().enumerate() {
                    rem[k + j] -= &c * r;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dr);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, rhs: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let inv = Rational::one() / a.lead();
        a.scale(&inv)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.0.len().max(rhs.0.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.0.len().max(rhs.0.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::default();
        }
        let mut v = vec![Rational::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, x) in self.0.iter().enumerate() {
            for (j, y) in rhs.0.iter().enumerate() {
                v[i + j] += x * y;
            }
        }
        Poly::new(v)
    }
}

/// An element of the rational function field `Q(t)`, stored as a reduced
/// fraction with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g = num.gcd(&den);
        let num = num.div_rem(&g).0;
        let den = den.div_rem(&g).0;
        let inv = Rational::one() / den.lead();
        RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn constant(c: Rational) -> Self {
        RatFunc { num: Poly::constant(c), den: Poly::constant(Rational::one()) }
    }

    /// The parameter `t` itself.
    pub fn t() -> Self {
        RatFunc { num: Poly::t(), den: Poly::constant(Rational::one()) }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    /// Order of vanishing (negative for a pole) at `t = 0`; `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        let vn = self.num.valuation()? as i64;
        let vd = self.den.valuation().expect("nonzero denominator") as i64;
        Some(vn - vd)
    }

    /// Multiplies by `t^k` for any integer `k`.
    pub fn shift(&self, k: i64) -> RatFunc {
        if k >= 0 {
            RatFunc::new(self.num.shift(k as usize), self.den.clone())
        } else {
            RatFunc::new(self.num.clone(), self.den.shift((-k) as usize))
        }
    }

    /// Value and first derivative at `t = 0`, or `None` if `t = 0` is a pole.
    pub fn jet_at_zero(&self) -> Option<Jet> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return None;
        }
        let (n0, n1, d1) = (self.num.coeff(0), self.num.coeff(1), self.den.coeff(1));
        let primal = &n0 / &d0;
        let tangent = (n1 * &d0 - n0 * d1) / (&d0 * &d0);
        Some(Jet { primal, tangent })
    }

    /// Value at `t = 0` when finite.
    pub fn value_at_zero(&self) -> Option<Rational> {
        self.jet_at_zero().map(|j| j.primal)
    }

    fn reduced_unshift(&self) -> RatFunc {
        // strip common powers of t without a full gcd
        let k = self.num.valuation().unwrap_or(0).min(self.den.valuation().unwrap_or(0));
        RatFunc { num: self.num.unshift(k), den: self.den.unshift(k) }
    }
}

impl From<Rational> for RatFunc {
    fn from(c: Rational) -> Self {
        RatFunc::constant(c)
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc { num: Poly::default(), den: Poly::constant(Rational::one()) }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::constant(Rational::one())
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den);
        }
        RatFunc::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        self + (-rhs)
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: RatFunc) -> RatFunc {
        assert!(!rhs.is_zero(), "division by the zero rational function");
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num).reduced_unshift()
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: self.num.scale(&-Rational::one()), den: self.den }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: &Poly| {
            if p.is_zero() {
                return "0".to_string();
            }
            let terms: Vec<String> = p
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| match k {
                    0 => format!("{c}"),
                    1 => format!("{c}·t"),
                    _ => format!("{c}·t^{k}"),
                })
                .collect();
            terms.join(" + ")
        };
        write!(f, "({}) / ({})", show(&self.num), show(&self.den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qi};

    fn poly(cs: &[i64]) -> Poly {
        Poly::new(cs.iter().map(|&c| qi(c)).collect())
    }

    #[test]
    fn division_with_remainder() {
        // (t^2 + 3t + 2) = (t + 1)(t + 2)
        let (quot, rem) = poly(&[2, 3, 1]).div_rem(&poly(&[1, 1]));
        assert_eq!(quot, poly(&[2, 1]));
        assert!(rem.is_zero());
        let (quot, rem) = poly(&[1, 0, 1]).div_rem(&poly(&[0, 2]));
        assert_eq!(quot, Poly::new(vec![qi(0), q(1, 2)]));
        assert_eq!(rem, poly(&[1]));
    }

    #[test]
    fn fractions_reduce() {
        let f = RatFunc::new(poly(&[2, 3, 1]), poly(&[2, 2]));
        assert_eq!(f.numer(), &Poly::new(vec![qi(1), q(1, 2)]));
        assert_eq!(f.denom(), &poly(&[1]));
        let g = RatFunc::t() / (RatFunc::t() * RatFunc::t());
        assert_eq!(g.valuation(), Some(-1));
        assert_eq!(g.shift(1), RatFunc::one());
    }

    #[test]
    fn jets_at_zero() {
        // (1 + 2t) / (1 − t) = 1 + 3t + O(t²)
        let f = RatFunc::new(poly(&[1, 2]), poly(&[1, -1]));
        assert_eq!(f.jet_at_zero().unwrap(), Jet::new(qi(1), qi(3)));
        assert!((RatFunc::one() / RatFunc::t()).jet_at_zero().is_none());
    }

    #[test]
    fn field_identities() {
        let x = RatFunc::new(poly(&[1, 1]), poly(&[3, 0, 1]));
        let y = RatFunc::new(poly(&[0, 2]), poly(&[1, 5]));
        assert_eq!((x.clone() * y.clone()) / y.clone(), x);
        assert_eq!((x.clone() + y.clone()) - y.clone(), x);
        assert!((x.clone() - x.clone()).is_zero());
    }
}
