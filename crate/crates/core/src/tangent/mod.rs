//! Zariski tangent spaces of the image at a point: linearized minors, the
//! Jacobian kernel, and the per-level system built from the tree.

mod profile;
mod system;
mod witness;

pub use profile::{branch_profile, Arm, BranchProfile, SubBranch};
pub use system::{constructive_system, Equation, Rule, TangentSystem};
pub use witness::{smoothing_witness, SmoothingWitness, WitnessCase};

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::curves::{omega, JetMultiPoint, MarkedCurve, MultiPoint};
use crate::error::{Error, Result};
use crate::exact::{format_rational, Rational};
use crate::linalg::{kernel, rank, same_span};
use crate::mr_ideal::{evaluate, generators, MinorIndex};
use crate::trees::Label;

/// A tangent variable `x̲_l^{(i)}`; ordered factor-major, then by label.
pub type Var = (u32, Label);

/// Per factor, the label of its leftmost nonzero entry (set to one).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartIndex(pub Vec<Label>);

impl ChartIndex {
    pub fn of(&self, i: u32) -> Label {
        self.0[i as usize - 1]
    }
}

pub fn chart(point: &MultiPoint) -> ChartIndex {
    ChartIndex(
        point
            .factors()
            .iter()
            .enumerate()
            .map(|(k, f)| {
                let c = f.iter().position(|x| !x.is_zero()).expect("nonzero factor");
                Label::columns(k as u32 + 1)[c]
            })
            .collect(),
    )
}

/// The affine chart's variables in order; there are `n(n+1)/2` of them.
pub fn variables(point: &MultiPoint) -> Vec<Var> {
    let ch = chart(point);
    let mut out = Vec::new();
    for i in 1..=point.n() {
        out.extend(Label::columns(i).into_iter().filter(|l| *l != ch.of(i)).map(|l| (i, l)));
    }
    out
}

/// A linear form in the tangent variables with no zero coefficients stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearForm {
    coeffs: BTreeMap<Var, Rational>,
}

impl LinearForm {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Var, Rational)>) -> Self {
        let mut f = Self::new();
        for (v, c) in terms {
            f.add(v, c);
        }
        f
    }

    pub fn add(&mut self, v: Var, c: Rational) {
        let e = self.coeffs.entry(v).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&v);
        }
    }

    pub fn coeff(&self, v: Var) -> Rational {
        self.coeffs.get(&v).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> &BTreeMap<Var, Rational> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The largest variable with a nonzero coefficient.
    pub fn leading(&self) -> Option<Var> {
        self.coeffs.keys().next_back().copied()
    }

    /// Scaled so the leading coefficient is one.
    pub fn normalized(&self) -> Self {
        let Some(lead) = self.leading() else { return self.clone() };
        let inv = Rational::one() / &self.coeffs[&lead];
        LinearForm { coeffs: self.coeffs.iter().map(|(v, c)| (*v, c * &inv)).collect() }
    }

    pub fn dense(&self, vars: &[Var]) -> Vec<Rational> {
        vars.iter().map(|v| self.coeff(*v)).collect()
    }

    pub fn apply(&self, vector: &BTreeMap<Var, Rational>) -> Rational {
        self.coeffs
            .iter()
            .fold(Rational::zero(), |acc, (v, c)| acc + c * vector.get(v).cloned().unwrap_or_else(Rational::zero))
    }

    /// Coefficients keyed `x[i][l]`.
    pub fn to_json_map(&self) -> BTreeMap<String, String> {
        self.coeffs.iter().map(|((i, l), c)| (format!("x[{i}][{l}]"), format_rational(c))).collect()
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, ((i, l), c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c < &Rational::zero();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = if neg { -c.clone() } else { c.clone() };
            if !a.is_one() {
                write!(f, "{}*", format_rational(&a))?;
            }
            write!(f, "x{i}_{l}")?;
        }
        Ok(())
    }
}

/// The degree-one part of a minor at `point`, chart variables set to zero.
pub fn linearize_minor(idx: &MinorIndex, point: &MultiPoint) -> Result<LinearForm> {
    if !evaluate(idx, point).is_zero() {
        return Err(Error::NotOnVariety(*idx));
    }
    let MinorIndex { i, j, m, r } = *idx;
    let li = Label::Int(i);
    let (xm, xr) = (point.get(i, m), point.get(i, r));
    let (ym, yr, yi) = (point.get(j, m), point.get(j, r), point.get(j, li));
    let ch = chart(point);
    let mut f = LinearForm::new();
    let mut put = |v: Var, c: Rational| {
        if ch.of(v.0) != v.1 {
            f.add(v, c);
        }
    };
    put((i, m), (ym - yi) * yr);
    put((i, r), -((yr - yi) * ym));
    put((j, m), xm * yr - xr * (yr - yi));
    put((j, r), xm * (ym - yi) - xr * ym);
    put((j, li), xr * ym - xm * yr);
    Ok(f)
}

/// Every generator linearized, as dense rows over [`variables`].
pub fn jacobian(point: &MultiPoint) -> Result<(Vec<Var>, Vec<Vec<Rational>>)> {
    let vars = variables(point);
    let rows = generators(point.n())
        .iter()
        .map(|g| Ok(linearize_minor(g, point)?.dense(&vars)))
        .collect::<Result<Vec<_>>>()?;
    Ok((vars, rows))
}

pub fn jacobian_kernel(point: &MultiPoint) -> Result<Vec<Vec<Rational>>> {
    let (vars, rows) = jacobian(point)?;
    Ok(kernel(&rows, vars.len()))
}

/// Dimension of the Zariski tangent space of the equations at `point`.
pub fn jacobian_nullity(point: &MultiPoint) -> Result<usize> {
    let (vars, rows) = jacobian(point)?;
    Ok(vars.len() - rank(&rows))
}

/// The levels `2, …, n` stacked, compared with the Jacobian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub equations: usize,
    pub expected: usize,
    pub rank: usize,
    pub jacobian_nullity: usize,
    pub same_kernel: bool,
}

impl Comparison {
    pub fn holds(&self) -> bool {
        self.equations == self.expected && self.rank == self.expected && self.same_kernel
    }
}

pub fn stacked_system(curve: &MarkedCurve) -> Result<Vec<Equation>> {
    let mut all = Vec::new();
    for level in 2..=curve.top() {
        all.extend(constructive_system(curve, level)?.equations);
    }
    Ok(all)
}

pub fn compare_with_jacobian(curve: &MarkedCurve) -> Result<Comparison> {
    let n = curve.top() as usize;
    let point = omega(curve)?;
    let vars = variables(&point);
    let rows: Vec<Vec<Rational>> = stacked_system(curve)?.iter().map(|e| e.form.dense(&vars)).collect();
    let (_, jac) = jacobian(&point)?;
    let jac_kernel = kernel(&jac, vars.len());
    let cons_kernel = kernel(&rows, vars.len());
    Ok(Comparison {
        equations: rows.len(),
        expected: n * n.saturating_sub(1) / 2,
        rank: rank(&rows),
        jacobian_nullity: jac_kernel.len(),
        same_kernel: same_span(&jac_kernel, &cons_kernel),
    })
}

/// Whether the stacked constructive system has `C(n, 2)` independent
/// equations cutting out exactly the Jacobian kernel.
pub fn kernel_equals_constructive(curve: &MarkedCurve) -> Result<bool> {
    Ok(compare_with_jacobian(curve)?.holds())
}

/// The tangent part of a jet point, keyed by the chart variables.
pub fn tangent_vector(jet: &JetMultiPoint) -> BTreeMap<Var, Rational> {
    let mut out = BTreeMap::new();
    for i in 1..=jet.n() {
        for (c, l) in Label::columns(i).into_iter().enumerate() {
            let x = &jet.factor(i)[c].tangent;
            if !x.is_zero() {
                out.insert((i, l), x.clone());
            }
        }
    }
    out
}
