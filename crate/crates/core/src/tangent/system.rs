//! One level of the constructive system: `level − 1` independent tangent
//! equations, each the linearization of a single minor chosen from the tree.

use std::fmt;

use num_traits::Zero;

use super::profile::{branch_profile, Arm, BranchProfile};
use super::{linearize_minor, variables, LinearForm};
use crate::curves::{omega, MarkedCurve, MultiPoint};
use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::mr_ideal::MinorIndex;
use crate::trees::Label;

/// Which configuration an equation comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Minimum of a sub-branch off the `a` branch two or more steps from `v`.
    AZero,
    /// Two leaves on one sub-branch off the `a` branch.
    ASame,
    /// Minima of two sub-branches next to `v` on the `a` branch.
    ACompare,
    KZero,
    KSame,
    KCompare,
    /// Two leaves on one `t` branch.
    TBranch,
    TvsT,
    TvsA,
    TvsK,
    /// The equation in the lower factors for `n` on a trivalent component
    /// with two nodes.
    Extra,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::AZero => "a-branch zero sub-branch",
            Rule::ASame => "a-branch same sub-branch",
            Rule::ACompare => "a-branch nonzero sub-branches",
            Rule::KZero => "k-branch zero sub-branch",
            Rule::KSame => "k-branch same sub-branch",
            Rule::KCompare => "k-branch nonzero sub-branches",
            Rule::TBranch => "within a t branch",
            Rule::TvsT => "t branch against t branch",
            Rule::TvsA => "t branch against a branch",
            Rule::TvsK => "t branch against k branch",
            Rule::Extra => "extra equation",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    /// Normalized so the largest variable has coefficient one.
    pub form: LinearForm,
    pub minor: MinorIndex,
    pub rule: Rule,
    /// The variable the equation eliminates; `None` for the extra equation.
    pub eliminates: Option<Label>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentSystem {
    pub level: u32,
    pub profile: BranchProfile,
    pub equations: Vec<Equation>,
}

struct Builder<'a> {
    point: &'a MultiPoint,
    n: u32,
    k: Label,
    out: Vec<Equation>,
}

fn mismatch(msg: String) -> Error {
    Error::ProfileMismatch(msg)
}

impl Builder<'_> {
    fn emit(&mut self, i: Label, m: Label, r: Label, rule: Rule, eliminates: Option<Label>) -> Result<()> {
        let ii = i.int().ok_or_else(|| mismatch(format!("{rule}: row label {i} is not an integer")))?;
        if m == r || m >= i || r >= i {
            return Err(mismatch(format!("{rule}: columns {m}, {r} do not fit row {i}")));
        }
        let idx = MinorIndex::new(ii, self.n, m, r);
        let form = linearize_minor(&idx, self.point)?;
        if form.is_zero() {
            return Err(mismatch(format!("{rule}: minor {idx} linearizes to zero")));
        }
        self.out.push(Equation { form: form.normalized(), minor: idx, rule, eliminates });
        Ok(())
    }

    /// The least `m < u` among `candidates` with `x_m^{(u)} ≠ 0`.
    fn partner(&self, u: Label, candidates: &[Label]) -> Result<Label> {
        let ui = u.int().ok_or_else(|| mismatch(format!("{u} has no factor")))?;
        candidates
            .iter()
            .copied()
            .find(|&m| m < u && !self.point.get(ui, m).is_zero())
            .ok_or_else(|| mismatch(format!("no partner for {u}")))
    }

    /// A non-minimal leaf of a sub-branch off the `a` branch with no leaf
    /// below `k` between it and `v`, or of any sub-branch off the `k` branch.
    fn same_sub(&mut self, u: Label, sub: &[Label], rule: Rule) -> Result<()> {
        if u < self.k {
            self.emit(self.k, sub[0], u, rule, Some(u))
        } else {
            let m = self.partner(u, sub)?;
            self.emit(u, m, self.k, rule, Some(u))
        }
    }

    fn a_branch(&mut self, arm: &Arm, m0: Label) -> Result<()> {
        let k = self.k;
        for &u in arm.leaves.iter().filter(|&&u| u != Label::A && u != m0) {
            let sub = arm.sub_of(u).ok_or_else(|| mismatch(format!("{u} is on no sub-branch")))?;
            let p = sub.min();
            if sub.is_nonzero() {
                if u != p {
                    self.same_sub(u, &sub.leaves, Rule::ASame)?;
                } else if u < k {
                    self.emit(k, u, m0, Rule::ACompare, Some(u))?;
                } else {
                    self.emit(u, m0, k, Rule::ACompare, Some(u))?;
                }
                continue;
            }
            // the nearest depth carrying a leaf below k, and its least such leaf
            let below_k = arm
                .closer_than(sub.depth)
                .filter(|s| s.min() < k)
                .min_by_key(|s| (s.depth, s.min()))
                .map(|s| s.depth)
                .map(|d| arm.subs.iter().filter(|s| s.depth == d).map(|s| s.min()).min().unwrap());
            let i_star = arm
                .closer_than(sub.depth)
                .map(|s| s.min())
                .min()
                .ok_or_else(|| mismatch(format!("nothing between {u} and v")))?;
            match below_k {
                Some(m) if u < k => self.emit(k, u, m, Rule::AZero, Some(u))?,
                _ if u == p && i_star > p => self.emit(i_star, p, k, Rule::AZero, Some(u))?,
                _ if u == p => self.emit(p, i_star, k, Rule::AZero, Some(u))?,
                _ => self.same_sub(u, &sub.leaves, Rule::ASame)?,
            }
        }
        Ok(())
    }

    fn k_branch(&mut self, arm: &Arm, m_k: Label) -> Result<()> {
        let k = self.k;
        for &u in arm.leaves.iter().filter(|&&u| u != k && u != m_k) {
            let sub = arm.sub_of(u).ok_or_else(|| mismatch(format!("{u} is on no sub-branch")))?;
            let q = sub.min();
            if u != q {
                self.same_sub(u, &sub.leaves, Rule::KSame)?;
            } else if sub.is_nonzero() {
                self.emit(u, m_k, k, Rule::KCompare, Some(u))?;
            } else {
                let r = arm
                    .closer_than(sub.depth)
                    .map(|s| s.min())
                    .min()
                    .ok_or_else(|| mismatch(format!("nothing between {u} and v")))?;
                if r > q {
                    self.emit(r, q, k, Rule::KZero, Some(u))?;
                } else {
                    self.emit(q, r, k, Rule::KZero, Some(u))?;
                }
            }
        }
        Ok(())
    }

    /// `m` and `m_r` compared through the larger of the two.
    fn compare(&mut self, m: Label, m_r: Label, rule: Rule) -> Result<()> {
        let k = self.k;
        if m < m_r {
            self.emit(m_r, m, k, rule, Some(m))
        } else {
            self.emit(m, m_r, k, rule, Some(m))
        }
    }
}

/// The equations contributed at `level`, on the curve with every larger
/// label forgotten, at the point `Ω` of that curve.
pub fn constructive_system(curve: &MarkedCurve, level: u32) -> Result<TangentSystem> {
    let c = curve.restrict(level)?;
    let point = omega(&c)?;
    let profile = branch_profile(&c);
    let mut b = Builder { point: &point, n: level, k: profile.k, out: Vec::new() };
    let need = |x: Option<Label>, what: &str| x.ok_or_else(|| mismatch(format!("profile has no {what}")));
    if profile.l0() >= 2 {
        b.a_branch(&profile.a_branch, need(profile.m0, "m0")?)?;
    }
    if profile.lk() >= 2 {
        b.k_branch(&profile.k_branch, need(profile.m_k, "m_k")?)?;
    }
    for branch in &profile.t_branches {
        for &u in &branch[1..] {
            let m = b.partner(u, branch)?;
            b.emit(u, m, profile.k, Rule::TBranch, Some(u))?;
        }
    }
    let minima = profile.t_minima();
    if let Some(&m_r) = minima.last() {
        for &m in &minima[..minima.len() - 1] {
            b.compare(m, m_r, Rule::TvsT)?;
        }
        if profile.l0() >= 2 {
            b.compare(need(profile.m0, "m0")?, m_r, Rule::TvsA)?;
        }
        if profile.lk() >= 2 {
            b.compare(need(profile.m_k, "m_k")?, m_r, Rule::TvsK)?;
        }
    }
    if profile.exceptional {
        let (m0, m_k) = (need(profile.m0, "m0")?, need(profile.m_k, "m_k")?);
        let (m, i) = if m0 < m_k { (m0, m_k) } else { (m_k, m0) };
        b.emit(i, m, profile.k, Rule::Extra, None)?;
    }
    let equations = b.out;
    let expected = level as usize - 1;
    if equations.len() != expected {
        return Err(mismatch(format!("level {level}: {} equations, expected {expected}", equations.len())));
    }
    let vars = variables(&point);
    let rows: Vec<_> = equations.iter().map(|e| e.form.dense(&vars)).collect();
    if rank(&rows) != expected {
        return Err(mismatch(format!("level {level}: equations are dependent")));
    }
    Ok(TangentSystem { level, profile, equations })
}
