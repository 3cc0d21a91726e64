//! Stable marked curves, the morphisms `ψ_i`, and the embedding `Ω_n`.
//!
//! A curve is a stable tree whose internal vertices carry, for every incident
//! edge, the `ℙ¹` coordinate of that special point on the component.

mod canonical;
mod family;
mod io;
mod random;

use num_traits::Zero;

pub use canonical::{canonical_form, retwist};
pub use family::{
    family_omega, jets_at_zero, perturb_point, point_perturbations, smooth_node, smoothing_family, JetMultiPoint,
};
pub use io::{CurveFile, MultiPointFile};
pub use random::random_curve;

use crate::error::{Error, Result};
use crate::exact::{Extended, Field, Mobius, RatFunc, Rational};
use crate::trees::{Label, LabeledTree};

/// A stable curve with coordinates in `ℙ¹(F)`.
pub type Curve<F> = LabeledTree<Extended<F>>;

/// A stable curve with rational coordinates.
pub type MarkedCurve = Curve<Rational>;

/// A family of curves over `Q(t)`.
pub type CurveFamily = Curve<RatFunc>;

/// Checks the tree, the label set `a, b, c, 1, …, n` and per-component
/// distinctness of special points.
pub fn validate_curve<F: Field>(curve: &Curve<F>) -> Result<()> {
    curve.validate()?;
    let labels = curve.labels();
    let n = curve.top();
    if labels != Label::up_to(n) {
        return Err(Error::InvalidCurve(format!("labels must be a, b, c, 1, …, {n} without gaps")));
    }
    for v in curve.internal_vertices() {
        let ports = curve.ports(v);
        for (k, (_, z)) in ports.iter().enumerate() {
            if ports[..k].iter().any(|(_, w)| w == z) {
                return Err(Error::InvalidCurve(format!("repeated special point on component {v}")));
            }
        }
    }
    Ok(())
}

/// Scales a nonzero vector so its leftmost nonzero entry is one.
pub fn normalize<F: Field>(v: &mut [F]) {
    if let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() {
        for x in v.iter_mut() {
            *x = x.clone() / lead.clone();
        }
    }
}

/// A point of `ℙ¹ × ℙ² × ⋯ × ℙⁿ`; factor `i` has entries `b, c, 1, …, i − 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoint<F = Rational> {
    factors: Vec<Vec<F>>,
}

impl<F: Field> MultiPoint<F> {
    /// Validates shapes and normalizes every factor.
    pub fn new(factors: Vec<Vec<F>>) -> Result<Self> {
        let mut p = Self::raw(factors)?;
        for f in &mut p.factors {
            normalize(f);
        }
        Ok(p)
    }

    /// Validates shapes but keeps the given scaling.
    pub fn raw(factors: Vec<Vec<F>>) -> Result<Self> {
        for (k, f) in factors.iter().enumerate() {
            if f.len() != k + 2 {
                return Err(Error::InvalidPoint(format!("factor {} must have {} entries", k + 1, k + 2)));
            }
            if f.iter().all(Zero::is_zero) {
                return Err(Error::InvalidPoint(format!("factor {} is the zero vector", k + 1)));
            }
        }
        Ok(MultiPoint { factors })
    }

    pub fn n(&self) -> u32 {
        self.factors.len() as u32
    }

    pub fn factors(&self) -> &[Vec<F>] {
        &self.factors
    }

    /// Factor `i` (1-based).
    pub fn factor(&self, i: u32) -> &[F] {
        &self.factors[i as usize - 1]
    }

    /// The coordinate `x_l^{(i)}`.
    pub fn get(&self, i: u32, l: Label) -> &F {
        &self.factors[i as usize - 1][l.column()]
    }

    /// The first `m` factors.
    pub fn truncate(&self, m: u32) -> Self {
        MultiPoint { factors: self.factors[..m as usize].to_vec() }
    }

    pub fn map<G>(&self, mut f: impl FnMut(&F) -> G) -> MultiPoint<G> {
        MultiPoint { factors: self.factors.iter().map(|v| v.iter().map(&mut f).collect()).collect() }
    }
}

/// `ψ_n` of a curve whose largest label is `n`, normalized.
pub fn psi_top<F: Field>(curve: &Curve<F>) -> Result<Vec<F>> {
    let i = curve.top();
    assert!(i >= 1, "ψ needs an integer label");
    let leaf = curve.leaf(Label::Int(i))?;
    let v = curve.neighbors(leaf)[0];
    let z_i = curve.port(v, leaf).clone();
    let mut blocks = Vec::new();
    let mut z_a = None;
    for (u, z) in curve.ports(v) {
        if *u == leaf {
            continue;
        }
        let side = curve.side_leaves(v, *u);
        if side[0] == Label::A {
            z_a = Some(z.clone());
        }
        blocks.push((side, z));
    }
    let z_a = z_a.expect("some branch contains a");
    let g = Mobius::zero_and_pole(&z_a, &z_i)?;
    let mut out = vec![F::zero(); i as usize + 1];
    for (side, z) in blocks {
        if side[0] == Label::A {
            // g(z_a) = 0 already; skip the evaluation
            for l in side.into_iter().skip(1) {
                out[l.column()] = F::zero();
            }
            continue;
        }
        let val = match g.apply(z) {
            Extended::Finite(x) => x,
            Extended::Infinity => return Err(Error::InvalidCurve("special points collide".into())),
        };
        for l in side {
            out[l.column()] = val.clone();
        }
    }
    normalize(&mut out);
    Ok(out)
}

/// `ψ_i` of the curve restricted to labels `≤ i`.
pub fn psi<F: Field>(curve: &Curve<F>, i: u32) -> Result<Vec<F>> {
    psi_top(&curve.restrict(i)?)
}

/// `Ω_n(C)`: factor `i` is `ψ_i` of `C` with `i + 1, …, n` forgotten.
pub fn omega<F: Field>(curve: &Curve<F>) -> Result<MultiPoint<F>> {
    let n = curve.top();
    let mut factors = Vec::with_capacity(n as usize);
    let mut c = curve.clone();
    for i in (1..=n).rev() {
        factors.push(psi_top(&c)?);
        if i > 1 {
            c = c.forget(Label::Int(i))?;
        }
    }
    factors.reverse();
    Ok(MultiPoint { factors })
}

/// Forgets marked point `m`, contracting a component left with two special points.
pub fn forget_point<F: Field>(curve: &Curve<F>, m: Label) -> Result<Curve<F>> {
    curve.forget(m)
}

/// Lifts a rational curve to a constant family over `Q(t)`.
pub fn lift(curve: &MarkedCurve) -> CurveFamily {
    curve.map_ports(|_, _, z| z.map(|x| RatFunc::constant(x.clone())))
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::exact::{q, qi};
    use crate::trees::StableTree;

    /// Builds a curve from tree text and, per internal vertex in text preorder,
    /// coordinates listed in the vertex's port order.
    pub fn curve(text: &str, coords: &[&[Extended<Rational>]]) -> MarkedCurve {
        let t: StableTree = text.parse().unwrap();
        let c = t.map_ports(|v, u, _| {
            let k = t.ports(v).iter().position(|(w, _)| *w == u).unwrap();
            coords[v][k].clone()
        });
        validate_curve(&c).unwrap();
        c
    }

    pub fn f(x: Rational) -> Extended<Rational> {
        Extended::Finite(x)
    }

    /// Interior curve with `p_a = 0, p_b = 1, p_c = 2, p_1 = 3, p_2 = ∞`.
    pub fn e1() -> MarkedCurve {
        curve("(a,b,c,1,2)", &[&[f(qi(0)), f(qi(1)), f(qi(2)), f(qi(3)), Extended::Infinity]])
    }

    /// The curve with `a, b` on one component, `c` beside it, `1, 3` together
    /// and `4` on the central component where the branches `{1,3}`, `{2}`
    /// sit at `s`, `t` in a chart with the `a`-side node at 0 and `4` at ∞.
    pub fn branches(s: Rational, t: Rational) -> MarkedCurve {
        // preorder: v0 = centre (X, Y13, 2, 4); v1 = X (v0, Yab, c);
        // v2 = Yab (v1, a, b); v3 = Y13 (v0, 1, 3)
        curve(
            "(((a,b),c),(1,3),2,4)",
            &[
                &[f(qi(0)), f(s), f(t), Extended::Infinity],
                &[f(qi(0)), f(qi(1)), Extended::Infinity],
                &[f(qi(0)), f(qi(1)), Extended::Infinity],
                &[f(qi(0)), f(qi(1)), Extended::Infinity],
            ],
        )
    }

    pub fn branches_half_third() -> MarkedCurve {
        branches(q(1, 2), q(1, 3))
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::exact::{q, qi};

    fn mp(factors: Vec<Vec<Rational>>) -> MultiPoint {
        MultiPoint::new(factors).unwrap()
    }

    #[test]
    fn psi_of_interior_curve() {
        let c = e1();
        assert_eq!(psi(&c, 2).unwrap(), vec![qi(1), qi(2), qi(3)]);
        assert_eq!(psi(&c, 1).unwrap(), vec![qi(1), qi(4)]);
        assert_eq!(omega(&c).unwrap(), mp(vec![vec![qi(1), qi(4)], vec![qi(1), qi(2), qi(3)]]));
    }

    #[test]
    fn omega_of_branches_fixture() {
        let c = branches_half_third();
        // [0:0:1/2:1/3:1/2] with its leftmost nonzero entry scaled to one
        assert_eq!(psi(&c, 4).unwrap(), vec![qi(0), qi(0), qi(1), q(2, 3), qi(1)]);
        let want = mp(vec![
            vec![qi(0), qi(1)],
            vec![qi(0), qi(0), qi(1)],
            vec![qi(0), qi(0), qi(1), qi(0)],
            vec![qi(0), qi(0), q(1, 2), q(1, 3), q(1, 2)],
        ]);
        assert_eq!(omega(&c).unwrap(), want);
    }

    #[test]
    fn forget_examples() {
        let c = forget_point(&e1(), Label::Int(2)).unwrap();
        assert_eq!(c, curve("(a,b,c,1)", &[&[f(qi(0)), f(qi(1)), f(qi(2)), f(qi(3))]]));
        let b = forget_point(&branches_half_third(), Label::Int(1)).unwrap();
        assert!(b.shape().same_shape(&branches_half_third().shape().forget(Label::Int(1)).unwrap()));
        // 3 takes the coordinate the node held on the central component
        let v = b.anchor(Label::Int(3)).unwrap();
        assert_eq!(b.port(v, b.leaf(Label::Int(3)).unwrap()), &f(q(1, 2)));
        let s4 = curve("(a,b,c,1)", &[&[f(qi(0)), f(qi(1)), f(qi(2)), f(qi(5))]]);
        let s3 = forget_point(&s4, Label::Int(1)).unwrap();
        assert_eq!(s3, curve("(a,b,c)", &[&[f(qi(0)), f(qi(1)), f(qi(2))]]));
    }

    #[test]
    fn invalid_curves_rejected() {
        let t: crate::trees::StableTree = "(a,b,c,1)".parse().unwrap();
        let dup = t.map_ports(|_, _, _| f(qi(0)));
        assert!(validate_curve(&dup).is_err());
        let gap: crate::trees::StableTree = "(a,b,c,2)".parse().unwrap();
        let mut k = 0;
        let gap = gap.map_ports(|_, _, _| {
            k += 1;
            f(qi(k))
        });
        assert!(validate_curve(&gap).is_err());
    }

    #[test]
    fn multipoint_shapes() {
        assert!(MultiPoint::new(vec![vec![qi(0), qi(0)]]).is_err());
        assert!(MultiPoint::new(vec![vec![qi(1), qi(2), qi(3)]]).is_err());
        let p = mp(vec![vec![qi(0), qi(3)], vec![qi(2), qi(4), qi(6)]]);
        assert_eq!(p.factor(1), &[qi(0), qi(1)]);
        assert_eq!(p.get(2, Label::Int(1)), &qi(3));
    }
}
