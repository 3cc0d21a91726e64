use num_traits::Zero;

use super::{Extended, Field, Jet, Rational};
use crate::error::{Error, Result};

/// The Möbius transformation `z ↦ (a·z + b) / (c·z + d)` with `ad − bc ≠ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mobius<F = Rational> {
    pub a: F,
    pub b: F,
    pub c: F,
    pub d: F,
}

impl<F: Field> Mobius<F> {
    /// Builds the map from its coefficients, rejecting singular matrices.
    pub fn new(a: F, b: F, c: F, d: F) -> Result<Self> {
        let m = Mobius { a, b, c, d };
        if m.det().is_zero() {
            return Err(Error::DegenerateTriple);
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        Mobius { a: F::one(), b: F::zero(), c: F::zero(), d: F::one() }
    }

    pub fn det(&self) -> F {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    /// The unique map with `z0 ↦ 0`, `z1 ↦ 1`, `z_inf ↦ ∞`.
    pub fn through(z0: &Extended<F>, z1: &Extended<F>, z_inf: &Extended<F>) -> Result<Self> {
        use Extended::*;
        if z0 == z1 || z0 == z_inf || z1 == z_inf {
            return Err(Error::DegenerateTriple);
        }
        let m = match (z0, z1, z_inf) {
            // z ↦ (z1 − z∞) / (z − z∞)
            (Infinity, Finite(z1), Finite(zi)) => Mobius {
                a: F::zero(),
                b: z1.clone() - zi.clone(),
                c: F::one(),
                d: -zi.clone(),
            },
            // z ↦ (z − z0) / (z − z∞)
            (Finite(z0), Infinity, Finite(zi)) => Mobius {
                a: F::one(),
                b: -z0.clone(),
                c: F::one(),
                d: -zi.clone(),
            },
            // z ↦ (z − z0) / (z1 − z0)
            (Finite(z0), Finite(z1), Infinity) => Mobius {
                a: F::one(),
                b: -z0.clone(),
                c: F::zero(),
                d: z1.clone() - z0.clone(),
            },
            // z ↦ (z − z0)(z1 − z∞) / ((z − z∞)(z1 − z0))
            (Finite(z0), Finite(z1), Finite(zi)) => {
                let top = z1.clone() - zi.clone();
                let bot = z1.clone() - z0.clone();
                Mobius {
                    b: -(z0.clone() * top.clone()),
                    a: top,
                    d: -(zi.clone() * bot.clone()),
                    c: bot,
                }
            }
            _ => unreachable!("at most one of three distinct points is infinite"),
        };
        Ok(m)
    }

    /// A map sending `zero ↦ 0` and `pole ↦ ∞`; defined up to scaling, which
    /// is fixed by the formulas below.
    pub fn zero_and_pole(zero: &Extended<F>, pole: &Extended<F>) -> Result<Self> {
        use Extended::*;
        match (zero, pole) {
            (Finite(z), Finite(p)) if z != p => {
                Ok(Mobius { a: F::one(), b: -z.clone(), c: F::one(), d: -p.clone() })
            }
            (Infinity, Finite(p)) => Ok(Mobius { a: F::zero(), b: F::one(), c: F::one(), d: -p.clone() }),
            (Finite(z), Infinity) => Ok(Mobius { a: F::one(), b: -z.clone(), c: F::zero(), d: F::one() }),
            _ => Err(Error::DegenerateTriple),
        }
    }

    pub fn apply(&self, z: &Extended<F>) -> Extended<F> {
        match z {
            Extended::Infinity => {
                if self.c.is_zero() {
                    Extended::Infinity
                } else {
                    Extended::Finite(self.a.clone() / self.c.clone())
                }
            }
            Extended::Finite(z) => {
                let den = self.c.clone() * z.clone() + self.d.clone();
                if den.is_zero() {
                    Extended::Infinity
                } else {
                    Extended::Finite((self.a.clone() * z.clone() + self.b.clone()) / den)
                }
            }
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Mobius<F>) -> Mobius<F> {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let (e, f, g, h) = (&other.a, &other.b, &other.c, &other.d);
        Mobius {
            a: a.clone() * e.clone() + b.clone() * g.clone(),
            b: a.clone() * f.clone() + b.clone() * h.clone(),
            c: c.clone() * e.clone() + d.clone() * g.clone(),
            d: c.clone() * f.clone() + d.clone() * h.clone(),
        }
    }

    pub fn inverse(&self) -> Mobius<F> {
        Mobius { a: self.d.clone(), b: -self.b.clone(), c: -self.c.clone(), d: self.a.clone() }
    }

    /// The point sent to `∞`.
    pub fn pole(&self) -> Extended<F> {
        if self.c.is_zero() {
            Extended::Infinity
        } else {
            Extended::Finite(-self.d.clone() / self.c.clone())
        }
    }
}

impl Mobius<Rational> {
    /// Pushes a first-order jet through the map: the tangent part is scaled
    /// by the derivative `(ad − bc) / (cz + d)²`.
    pub fn jet_eval(&self, z: &Jet) -> Result<Jet> {
        let den = &self.c * &z.primal + &self.d;
        if den.is_zero() {
            return Err(Error::PoleEvaluation);
        }
        let primal = (&self.a * &z.primal + &self.b) / &den;
        let tangent = self.det() / (&den * &den) * &z.tangent;
        Ok(Jet { primal, tangent })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qi, ExtendedScalar};

    fn fin(x: Rational) -> ExtendedScalar {
        Extended::Finite(x)
    }

    #[test]
    fn standard_triple_is_identity() {
        let g = Mobius::through(&fin(qi(0)), &fin(qi(1)), &Extended::Infinity).unwrap();
        for z in [qi(0), qi(3), q(-2, 7)] {
            assert_eq!(g.apply(&fin(z.clone())), fin(z));
        }
        assert_eq!(g.apply(&Extended::Infinity), Extended::Infinity);
    }

    #[test]
    fn cross_ratio_examples() {
        // ((z − z0)(z1 − z∞)) / ((z − z∞)(z1 − z0)) at z = 2
        let g = Mobius::through(&fin(qi(0)), &fin(qi(1)), &fin(qi(3))).unwrap();
        assert_eq!(g.apply(&fin(qi(2))), fin(qi(4)));
        let g = Mobius::through(&Extended::Infinity, &fin(qi(1)), &fin(qi(0))).unwrap();
        assert_eq!(g.apply(&fin(qi(2))), fin(q(1, 2)));
    }

    #[test]
    fn degenerate_triples_rejected() {
        let r = Mobius::through(&fin(qi(1)), &fin(qi(1)), &fin(qi(2)));
        assert!(matches!(r, Err(Error::DegenerateTriple)));
        let r = Mobius::through(&Extended::Infinity, &fin(qi(1)), &Extended::Infinity);
        assert!(matches!(r, Err(Error::DegenerateTriple)));
    }

    #[test]
    fn pole_and_infinity() {
        let g = Mobius::new(qi(2), qi(1), qi(1), qi(-3)).unwrap();
        assert_eq!(g.apply(&Extended::Infinity), fin(qi(2)));
        assert_eq!(g.apply(&g.pole()), Extended::Infinity);
        let affine = Mobius::new(qi(2), qi(0), qi(0), qi(1)).unwrap();
        assert_eq!(affine.apply(&Extended::Infinity), Extended::Infinity);
        assert!(Mobius::new(qi(1), qi(2), qi(2), qi(4)).is_err());
    }

    #[test]
    fn jet_examples() {
        let id = Mobius::<Rational>::identity();
        assert_eq!(id.jet_eval(&Jet::new(qi(2), qi(1))).unwrap(), Jet::new(qi(2), qi(1)));
        let recip = Mobius::new(qi(0), qi(1), qi(1), qi(0)).unwrap();
        assert_eq!(recip.jet_eval(&Jet::new(qi(2), qi(1))).unwrap(), Jet::new(q(1, 2), q(-1, 4)));
        let double = Mobius::new(qi(2), qi(0), qi(0), qi(1)).unwrap();
        assert_eq!(double.jet_eval(&Jet::new(qi(3), qi(5))).unwrap(), Jet::new(qi(6), qi(10)));
        assert!(matches!(recip.jet_eval(&Jet::new(qi(0), qi(1))), Err(Error::PoleEvaluation)));
    }

    #[test]
    fn inverse_and_compose() {
        let g = Mobius::new(qi(1), qi(2), qi(3), qi(5)).unwrap();
        let h = g.compose(&g.inverse());
        for z in [qi(0), q(7, 3), qi(-1)] {
            assert_eq!(h.apply(&fin(z.clone())), fin(z));
        }
        assert_eq!(h.apply(&Extended::Infinity), Extended::Infinity);
    }
}
