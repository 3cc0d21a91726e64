use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{validate_curve, MarkedCurve};
use crate::error::{Error, Result};
use crate::exact::{q, Extended, ExtendedScalar};
use crate::trees::{Label, StableTree};

/// A random stable curve with labels `a, b, c, 1, …, n` and exactly
/// `boundary_nodes` nodes. Deterministic in `(n, seed, boundary_nodes)`.
///
/// Labels `1, …, n` are inserted into the star on `a, b, c` in order; exactly
/// `boundary_nodes` of the insertions subdivide an edge (each adds one
/// node), the rest join an existing component.
pub fn random_curve(n: u32, seed: u64, boundary_nodes: u32) -> Result<MarkedCurve> {
    if boundary_nodes > n {
        return Err(Error::InfeasibleShape { n, nodes: boundary_nodes });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut steps: Vec<bool> = (0..n).map(|k| k < boundary_nodes).collect();
    steps.shuffle(&mut rng);

    let mut t = StableTree::star_of(&[Label::A, Label::B, Label::C]);
    for (k, subdivide) in steps.into_iter().enumerate() {
        let label = Label::Int(k as u32 + 1);
        if subdivide {
            let edges: Vec<(usize, usize)> =
                (0..t.len()).flat_map(|v| t.neighbors(v).into_iter().filter(move |&w| v < w).map(move |w| (v, w))).collect();
            let (v, w) = edges[rng.gen_range(0..edges.len())];
            let x = t.subdivide(v, w, (), ());
            t.add_leaf(x, label, ());
        } else {
            let internal: Vec<usize> = t.internal_vertices().collect();
            let v = internal[rng.gen_range(0..internal.len())];
            t.add_leaf(v, label, ());
        }
    }

    let charts: Vec<Vec<ExtendedScalar>> = (0..t.len()).map(|v| distinct_points(&mut rng, t.degree(v))).collect();
    let curve = t.map_ports(|v, u, _| {
        let k = t.neighbors(v).iter().position(|&w| w == u).expect("incident edge");
        charts[v][k].clone()
    });
    validate_curve(&curve)?;
    Ok(curve)
}

/// `k` distinct small rationals, one of them occasionally replaced by `∞`.
fn distinct_points<R: Rng>(rng: &mut R, k: usize) -> Vec<ExtendedScalar> {
    let mut out: Vec<ExtendedScalar> = Vec::with_capacity(k);
    while out.len() < k {
        let z = Extended::Finite(q(rng.gen_range(-7..=7), rng.gen_range(1..=4)));
        if !out.contains(&z) {
            out.push(z);
        }
    }
    if k > 1 && rng.gen_bool(0.3) {
        let slot = rng.gen_range(0..k);
        out[slot] = Extended::Infinity;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_and_determinism() {
        let c = random_curve(2, 5, 0).unwrap();
        assert_eq!(c.internal_vertices().count(), 1);
        let c = random_curve(5, 9, 3).unwrap();
        assert_eq!(c.internal_edges().len(), 3);
        assert_eq!(random_curve(6, 42, 4).unwrap(), random_curve(6, 42, 4).unwrap());
        assert!(matches!(random_curve(3, 0, 4), Err(Error::InfeasibleShape { .. })));
        for d in 0..=7 {
            let c = random_curve(7, 100 + d as u64, d).unwrap();
            assert_eq!(c.internal_edges().len(), d as usize);
        }
    }
}
