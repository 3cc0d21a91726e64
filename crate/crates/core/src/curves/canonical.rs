use rand::Rng;

use super::MarkedCurve;
use crate::exact::{qi, Mobius};

/// The representative of a curve's moduli point: on every component the
/// three special points with the smallest side minima go to `0, 1, ∞`, and
/// vertices and ports are renumbered canonically. Two curves are isomorphic
/// iff their canonical forms are equal.
pub fn canonical_form(curve: &MarkedCurve) -> MarkedCurve {
    let r = curve.relabeled();
    let charts: Vec<Option<Mobius>> = (0..r.len())
        .map(|v| {
            let p = r.ports(v);
            (p.len() >= 3).then(|| Mobius::through(&p[0].1, &p[1].1, &p[2].1).expect("special points are distinct"))
        })
        .collect();
    r.map_ports(|v, _, z| charts[v].as_ref().expect("internal vertex").apply(z))
}

/// Applies an independent random Möbius change of chart on every component.
pub fn retwist<R: Rng>(curve: &MarkedCurve, rng: &mut R) -> MarkedCurve {
    let charts: Vec<Mobius> = (0..curve.len())
        .map(|_| loop {
            let mut c = || qi(rng.gen_range(-5..=5));
            if let Ok(g) = Mobius::new(c(), c(), c(), c()) {
                break g;
            }
        })
        .collect();
    curve.map_ports(|v, _, z| charts[v].apply(z))
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::super::fixtures::*;
    use super::super::{omega, random_curve, validate_curve};
    use super::*;
    use crate::exact::{Extended, Rational};

    #[test]
    fn interior_curve_canonical_chart() {
        let c = canonical_form(&e1());
        // a, b, c ↦ 0, 1, ∞ by z ↦ −z/(z − 2), so p_1 = 3 ↦ −3 and p_2 = ∞ ↦ −1
        let v = c.anchor(crate::trees::Label::A).unwrap();
        let coords: Vec<Extended<Rational>> = c.ports(v).iter().map(|(_, z)| z.clone()).collect();
        assert_eq!(
            coords,
            vec![f(qi(0)), f(qi(1)), Extended::Infinity, f(qi(-3)), f(qi(-1))]
        );
    }

    #[test]
    fn idempotent_and_retwist_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for seed in 0..200u64 {
            let n = 1 + (seed % 6) as u32;
            let c = random_curve(n, seed, (seed % (n as u64 + 1)) as u32).unwrap();
            let k = canonical_form(&c);
            validate_curve(&k).unwrap();
            assert_eq!(canonical_form(&k), k);
            let t = retwist(&c, &mut rng);
            assert_eq!(canonical_form(&t), k);
            assert_eq!(omega(&t).unwrap(), omega(&c).unwrap());
        }
    }
}
