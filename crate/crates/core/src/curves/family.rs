//! One-parameter families over `Q(t)` and their first-order jets at `t = 0`.
//!
//! Jets are read off the `Q(t)`-valued embedding rather than by pushing dual
//! numbers through `Ω`: at a node the special points of the limit collide,
//! so the family must be evaluated before the limit is taken.

use num_traits::{One, Zero};

use super::{lift, omega, CurveFamily, MarkedCurve, MultiPoint};
use crate::error::{Error, Result};
use crate::exact::{Extended, Jet, Mobius, RatFunc, Rational};

/// A tangent vector to the ambient product: every factor is written in the
/// chart of its limit point, so chart entries are exactly `1 + 0ε`.
pub type JetMultiPoint = MultiPoint<Jet>;

fn rf(x: Rational) -> RatFunc {
    RatFunc::constant(x)
}

/// The family smoothing the node `{u, w}`: in a chart on `u` with the node
/// at 0 and a chart on `w` with the node at `∞`, the merged component keeps
/// `u`'s points and places `w`'s at `t·z`. The side of `w` moves.
pub fn smoothing_family(curve: &MarkedCurve, u: usize, w: usize) -> Result<CurveFamily> {
    if curve.is_leaf(u) || curve.is_leaf(w) || !curve.neighbors(u).contains(&w) {
        return Err(Error::NotAnInternalEdge);
    }
    let one = Rational::one();
    let zero = Rational::zero();
    let to_zero = match curve.port(u, w) {
        Extended::Finite(z0) => Mobius::new(one.clone(), -z0.clone(), zero.clone(), one.clone())?,
        Extended::Infinity => Mobius::new(zero.clone(), one.clone(), one.clone(), zero.clone())?,
    };
    let to_inf = match curve.port(w, u) {
        Extended::Finite(p) => Mobius::new(zero.clone(), one.clone(), one.clone(), -p.clone())?,
        Extended::Infinity => Mobius::identity(),
    };
    let mut fam = lift(curve);
    let mut ports = Vec::new();
    for (x, z) in curve.ports(u) {
        if *x != w {
            ports.push((*x, to_zero.apply(z).map(|y| rf(y.clone()))));
        }
    }
    for (x, z) in curve.ports(w) {
        if *x != u {
            let y = to_inf.apply(z).finite().cloned().expect("only the node sits at ∞");
            ports.push((*x, Extended::Finite(RatFunc::t() * rf(y))));
        }
    }
    fam.contract_edge(u, w, ports);
    Ok(fam)
}

/// The family moving the special point of `v` towards `x` by `z ↦ z + t`.
pub fn perturb_point(curve: &MarkedCurve, v: usize, x: usize) -> Option<CurveFamily> {
    let z = curve.port(v, x).finite()?.clone();
    let mut fam = lift(curve);
    fam.set_port(v, x, Extended::Finite(rf(z) + RatFunc::t()));
    Some(fam)
}

/// `Ω` of a family, as a point over `Q(t)` (unnormalized).
pub fn family_omega(fam: &CurveFamily) -> Result<MultiPoint<RatFunc>> {
    omega(fam)
}

/// The limit of a `Q(t)`-point at `t = 0` with its first-order jet, each
/// factor divided by the entry that is leftmost nonzero in the limit.
pub fn jets_at_zero(p: &MultiPoint<RatFunc>) -> Result<JetMultiPoint> {
    let mut factors = Vec::with_capacity(p.n() as usize);
    for f in p.factors() {
        let vmin = f.iter().filter_map(RatFunc::valuation).min().expect("nonzero factor");
        let shifted: Vec<RatFunc> = f.iter().map(|x| x.shift(-vmin)).collect();
        let lead = shifted
            .iter()
            .find(|x| x.value_at_zero().is_some_and(|y| !y.is_zero()))
            .expect("minimal valuation entry has a nonzero limit")
            .clone();
        let row = shifted
            .into_iter()
            .map(|x| (x / lead.clone()).jet_at_zero().expect("no pole after scaling"))
            .collect();
        factors.push(row);
    }
    MultiPoint::raw(factors)
}

/// The jet of `Ω` along the smoothing of `{u, w}` with `w`'s side moving.
pub fn smooth_node(curve: &MarkedCurve, u: usize, w: usize) -> Result<JetMultiPoint> {
    jets_at_zero(&family_omega(&smoothing_family(curve, u, w)?)?)
}

/// Jets of `Ω` for every single finite special point moved by `z ↦ z + t`.
pub fn point_perturbations(curve: &MarkedCurve) -> Result<Vec<JetMultiPoint>> {
    let mut out = Vec::new();
    for v in curve.internal_vertices() {
        for x in curve.neighbors(v) {
            if let Some(fam) = perturb_point(curve, v, x) {
                out.push(jets_at_zero(&family_omega(&fam)?)?);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::{random_curve, MultiPoint};
    use super::*;
    use crate::exact::q;

    fn primal(j: &JetMultiPoint) -> MultiPoint {
        MultiPoint::new(j.factors().iter().map(|f| f.iter().map(|x| x.primal.clone()).collect()).collect()).unwrap()
    }

    #[test]
    fn limits_are_the_original_point() {
        let c = branches_half_third();
        for (u, w) in c.internal_edges() {
            for (x, y) in [(u, w), (w, u)] {
                let j = smooth_node(&c, x, y).unwrap();
                assert_eq!(primal(&j), omega(&c).unwrap());
            }
        }
        for seed in 0..40 {
            let c = random_curve(5, seed, (seed % 6) as u32).unwrap();
            for (u, w) in c.internal_edges() {
                assert_eq!(primal(&smooth_node(&c, u, w).unwrap()), omega(&c).unwrap());
            }
            for j in point_perturbations(&c).unwrap() {
                assert_eq!(primal(&j), omega(&c).unwrap());
            }
        }
    }

    #[test]
    fn rejects_leaf_edges() {
        let c = e1();
        assert!(matches!(smoothing_family(&c, 0, 1), Err(Error::NotAnInternalEdge)));
    }

    #[test]
    fn perturbing_interior_point_moves_its_coordinate() {
        // p_1 = 3 ↦ 3 + t: ψ_2 = [1:2:3+t], so the x_1^{(2)} jet is 3 + ε
        let c = e1();
        let leaf = c.leaf(crate::trees::Label::Int(1)).unwrap();
        let j = jets_at_zero(&family_omega(&perturb_point(&c, 0, leaf).unwrap()).unwrap()).unwrap();
        assert_eq!(j.factor(2)[2], Jet::new(q(3, 1), q(1, 1)));
        assert!(j.factor(2)[0].tangent.is_zero());
    }
}
