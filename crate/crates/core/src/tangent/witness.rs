//! The extra equation is new: smoothing the node left between the two
//! neighbours of `v` after forgetting `n` gives a tangent vector of the
//! smaller space whose `x̲_m^{(i)}` coordinate is nonzero.

use std::collections::BTreeSet;

use num_traits::Zero;

use super::profile::branch_profile;
use super::{linearize_minor, tangent_vector, Var};
use crate::curves::{omega, smooth_node, MarkedCurve};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::mr_ideal::generators;
use crate::reconstruct::separating_edge;
use crate::trees::Label;

/// Case 1 moves the `k` side (`i = m0`); Case 2 moves the `a` side
/// (`i = m_k`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessCase {
    MoveKSide,
    MoveASide,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothingWitness {
    pub case: WitnessCase,
    pub i: u32,
    pub m: Label,
    /// The `x̲_m^{(i)}` component of the smoothing jet.
    pub coordinate: Rational,
    /// Whether the jet satisfies every linearized minor below level `n`.
    pub tangent: bool,
}

impl SmoothingWitness {
    pub fn holds(&self) -> bool {
        self.tangent && !self.coordinate.is_zero()
    }
}

pub fn smoothing_witness(curve: &MarkedCurve) -> Result<SmoothingWitness> {
    let profile = branch_profile(curve);
    if !profile.exceptional {
        return Err(Error::NotExceptional);
    }
    let n = curve.top();
    let (m0, m_k) = (profile.m0.expect("exceptional"), profile.m_k.expect("exceptional"));
    let (case, i, m) = if m0 > m_k { (WitnessCase::MoveKSide, m0, m_k) } else { (WitnessCase::MoveASide, m_k, m0) };
    let i = i.int().ok_or_else(|| Error::ProfileMismatch(format!("{i} has no factor")))?;
    let smaller = curve.forget(Label::Int(n))?;
    let k_side: BTreeSet<Label> = profile.k_branch.leaves.iter().copied().collect();
    let (va, vk) = separating_edge(&smaller, &k_side)?;
    let jet = match case {
        WitnessCase::MoveKSide => smooth_node(&smaller, va, vk)?,
        WitnessCase::MoveASide => smooth_node(&smaller, vk, va)?,
    };
    let vector = tangent_vector(&jet);
    let point = omega(&smaller)?;
    let mut tangent = true;
    for g in generators(n - 1) {
        if !linearize_minor(&g, &point)?.apply(&vector).is_zero() {
            tangent = false;
        }
    }
    let var: Var = (i, m);
    let coordinate = vector.get(&var).cloned().unwrap_or_else(Rational::zero);
    Ok(SmoothingWitness { case, i, m, coordinate, tangent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::fixtures::*;

    #[test]
    fn interior_curve_is_not_exceptional() {
        assert!(matches!(smoothing_witness(&e1()), Err(Error::NotExceptional)));
    }
}
