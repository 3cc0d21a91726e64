//! Inverting `Ω`: rebuilding a stable curve from a point satisfying the
//! equations, one marked point at a time.

mod separation;

pub use separation::{
    attachment_site, bad_configurations_with, color_leaves, find_bad_configurations, separating_edge,
    AttachmentSite, BadConfiguration, BadKind, Color, LeafColoring, SeparationTable,
};

use num_traits::{One, Zero};

use crate::curves::{omega, MarkedCurve, MultiPoint};
use crate::error::{Error, Result};
use crate::exact::{Extended, Mobius, Rational};
use crate::mr_ideal::is_member;
use crate::trees::Label;

/// A point whose last factor has distinct nonzero entries comes from a
/// smooth curve: `a = 0`, `n = ∞` and `j` at `x_j^{(n)}`.
pub fn reconstruct_interior(point: &MultiPoint) -> Result<MarkedCurve> {
    let n = point.n();
    if n == 0 {
        return Err(Error::NotInterior);
    }
    let y = point.factor(n);
    let distinct = y.iter().enumerate().all(|(k, x)| !x.is_zero() && !y[..k].contains(x));
    if !distinct {
        return Err(Error::NotInterior);
    }
    let violated = is_member(point);
    if !violated.is_empty() {
        return Err(Error::NotInImage { violated });
    }
    let mut pts = vec![(Label::A, Extended::Finite(Rational::zero()))];
    pts.extend(Label::columns(n).into_iter().map(|l| (l, Extended::Finite(y[l.column()].clone()))));
    pts.push((Label::Int(n), Extended::Infinity));
    let curve = MarkedCurve::star(pts);
    check_image(&curve, point)?;
    Ok(curve)
}

/// The unique stable curve with `Ω(C) = point`.
pub fn reconstruct(point: &MultiPoint) -> Result<MarkedCurve> {
    let violated = is_member(point);
    if !violated.is_empty() {
        return Err(Error::NotInImage { violated });
    }
    let (zero, one) = (Rational::zero(), Rational::one());
    let mut curve = MarkedCurve::star(vec![
        (Label::A, Extended::Finite(zero.clone())),
        (Label::B, Extended::Finite(one.clone())),
        (Label::C, Extended::Infinity),
    ]);
    for l in 1..=point.n() {
        let y = point.factor(l);
        let coloring = color_leaves(&curve, y);
        match attachment_site(&curve, &coloring)? {
            AttachmentSite::Edge(u, w) => {
                let x = curve.subdivide(u, w, Extended::Finite(zero.clone()), Extended::Finite(one.clone()));
                curve.add_leaf(x, Label::Int(l), Extended::Infinity);
            }
            AttachmentSite::Vertex(v) => {
                let z = insertion_point(&curve, point, v, l)?;
                curve.add_leaf(v, Label::Int(l), z);
            }
        }
    }
    check_image(&curve, point)?;
    Ok(curve)
}

/// Where `l` lands on component `v`: the branch minima `a < i_1 < ⋯ < i_m`
/// span a smooth curve, recovered by the interior case, and its chart is
/// carried to `v`'s by matching `a, i_1, i_2`.
fn insertion_point(curve: &MarkedCurve, point: &MultiPoint, v: usize, l: u32) -> Result<Extended<Rational>> {
    let mut branches: Vec<(Label, usize)> = curve.neighbors(v).into_iter().map(|u| (curve.side_min(v, u), u)).collect();
    branches.sort();
    debug_assert_eq!(branches[0].0, Label::A);
    let mins: Vec<Label> = branches[1..].iter().map(|(m, _)| *m).collect();
    let m = mins.len();
    // factor j ≥ 3 of the minima is the restriction of factor i_j
    let mut factors = Vec::with_capacity(m - 1);
    for j in 2..m {
        let i_j = mins[j].int().expect("third branch minimum is an integer");
        factors.push(mins[..j].iter().map(|c| point.get(i_j, *c).clone()).collect());
    }
    factors.push(mins.iter().map(|c| point.get(l, *c).clone()).collect());
    let aux = MultiPoint::new(factors)?;
    let small = reconstruct_interior(&aux)?;
    let hub = small.neighbors(small.leaf(Label::A)?)[0];
    let at = |lab: Label| -> Result<Extended<Rational>> { Ok(small.port(hub, small.leaf(lab)?).clone()) };
    let to_std = Mobius::through(&at(Label::A)?, &at(Label::B)?, &at(Label::C)?)?;
    let zs: Vec<&Extended<Rational>> = branches[..3].iter().map(|(_, u)| curve.port(v, *u)).collect();
    let from_std = Mobius::through(zs[0], zs[1], zs[2])?.inverse();
    Ok(from_std.compose(&to_std).apply(&Extended::Infinity))
}

fn check_image(curve: &MarkedCurve, point: &MultiPoint) -> Result<()> {
    if &omega(curve)? != point {
        return Err(Error::NotInImage { violated: is_member(point) });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::fixtures::*;
    use crate::curves::{canonical_form, random_curve};
    use crate::exact::qi;

    fn mp(f: Vec<Vec<i64>>) -> MultiPoint {
        MultiPoint::new(f.into_iter().map(|v| v.into_iter().map(qi).collect()).collect()).unwrap()
    }

    #[test]
    fn fixtures_round_trip() {
        for c in [e1(), branches_half_third()] {
            let back = reconstruct(&omega(&c).unwrap()).unwrap();
            assert_eq!(canonical_form(&back), canonical_form(&c));
        }
    }

    #[test]
    fn interior_example() {
        let c = reconstruct_interior(&mp(vec![vec![1, 4], vec![1, 2, 3]])).unwrap();
        assert_eq!(canonical_form(&c), canonical_form(&e1()));
        assert!(matches!(reconstruct_interior(&mp(vec![vec![1, 4], vec![1, 0, 3]])), Err(Error::NotInterior)));
        assert!(matches!(reconstruct_interior(&mp(vec![vec![1, 4], vec![1, 3, 3]])), Err(Error::NotInterior)));
    }

    #[test]
    fn non_members_are_rejected() {
        match reconstruct(&mp(vec![vec![1, 1], vec![1, 2, 3]])) {
            Err(Error::NotInImage { violated }) => assert_eq!(violated.len(), 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn random_round_trips() {
        for seed in 0..120 {
            let n = 1 + (seed % 6) as u32;
            let c = random_curve(n, seed, (seed % (n as u64 + 1)) as u32).unwrap();
            let back = reconstruct(&omega(&c).unwrap()).unwrap();
            assert_eq!(canonical_form(&back), canonical_form(&c), "seed {seed}");
        }
    }
}
