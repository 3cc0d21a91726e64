//! The defining equations: for `i < j` the 2×2 minors of
//!
//! ```text
//! ⎡ x_b^{(i)}(x_b^{(j)} − x_i^{(j)})  ⋯  x_{i−1}^{(i)}(x_{i−1}^{(j)} − x_i^{(j)}) ⎤
//! ⎣ x_b^{(j)}                        ⋯  x_{i−1}^{(j)}                        ⎦
//! ```

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::curves::MultiPoint;
use crate::exact::{Field, Rational};
use crate::trees::Label;

/// The minor of `Mat_{i,j}` on columns `m < r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MinorIndex {
    pub i: u32,
    pub j: u32,
    pub m: Label,
    pub r: Label,
}

impl MinorIndex {
    /// Builds the index with its columns in either order.
    pub fn new(i: u32, j: u32, m: Label, r: Label) -> Self {
        assert!(i < j && m != r, "invalid minor ({i},{j},{m},{r})");
        assert!(m < Label::Int(i) && r < Label::Int(i) && m != Label::A && r != Label::A);
        let (m, r) = if m < r { (m, r) } else { (r, m) };
        MinorIndex { i, j, m, r }
    }
}

impl fmt::Display for MinorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.i, self.j, self.m, self.r)
    }
}

/// JSON shape of a minor index.
#[derive(Clone, Debug, Serialize)]
pub struct MinorRecord {
    pub i: u32,
    pub j: u32,
    pub m: String,
    pub r: String,
}

impl From<&MinorIndex> for MinorRecord {
    fn from(x: &MinorIndex) -> Self {
        MinorRecord { i: x.i, j: x.j, m: x.m.to_string(), r: x.r.to_string() }
    }
}

/// All generators for `n`, in lexicographic order of `(i, j, m, r)`.
pub fn generators(n: u32) -> Vec<MinorIndex> {
    let mut out = Vec::new();
    for i in 1..n {
        let cols = Label::columns(i);
        for j in i + 1..=n {
            for (a, &m) in cols.iter().enumerate() {
                for &r in &cols[a + 1..] {
                    out.push(MinorIndex { i, j, m, r });
                }
            }
        }
    }
    out
}

/// `Σ_{i<n} C(i+1, 2)·(n − i)`.
pub fn generator_count(n: u32) -> usize {
    (1..n).map(|i| ((i + 1) * i / 2 * (n - i)) as usize).sum()
}

/// `x_m^{(i)}(x_m^{(j)} − x_i^{(j)})x_r^{(j)} − x_r^{(i)}(x_r^{(j)} − x_i^{(j)})x_m^{(j)}`
/// in the stored scaling.
pub fn evaluate<F: Field>(idx: &MinorIndex, p: &MultiPoint<F>) -> F {
    let MinorIndex { i, j, m, r } = *idx;
    let y_i = p.get(j, Label::Int(i)).clone();
    let (xm, xr) = (p.get(i, m).clone(), p.get(i, r).clone());
    let (ym, yr) = (p.get(j, m).clone(), p.get(j, r).clone());
    xm * (ym.clone() - y_i.clone()) * yr.clone() - xr * (yr - y_i) * ym
}

/// The generators that do not vanish at `p` (empty iff `p ∈ MR_n`).
pub fn is_member(p: &MultiPoint<Rational>) -> Vec<MinorIndex> {
    generators(p.n()).into_iter().filter(|g| !evaluate(g, p).is_zero()).collect()
}

/// A variable `x_l^{(i)}`, ordered by factor then label.
type Var = (u32, Label);

fn var_name((i, l): Var) -> String {
    format!("x{i}_{l}")
}

/// The expanded trilinear polynomial: monomials sorted lexicographically by
/// their sorted variable lists, e.g. for `n = 2`
/// `x1_b*x2_b*x2_c - x1_b*x2_c*x2_1 - x1_c*x2_b*x2_c + x1_c*x2_b*x2_1`.
pub fn expanded(idx: &MinorIndex) -> String {
    let MinorIndex { i, j, m, r } = *idx;
    let yi = (j, Label::Int(i));
    let (xm, xr, ym, yr) = ((i, m), (i, r), (j, m), (j, r));
    let mut terms: BTreeMap<Vec<Var>, i64> = BTreeMap::new();
    for (coef, vars) in [(1, [xm, ym, yr]), (-1, [xm, yi, yr]), (-1, [xr, yr, ym]), (1, [xr, yi, ym])] {
        let mut v = vars.to_vec();
        v.sort();
        *terms.entry(v).or_default() += coef;
    }
    let mut out = String::new();
    for (vars, c) in terms.into_iter().filter(|(_, c)| *c != 0) {
        let mono: Vec<String> = vars.into_iter().map(var_name).collect();
        let sign = if c < 0 { "-" } else { "+" };
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        if c.abs() != 1 {
            out.push_str(&format!("{}*", c.abs()));
        }
        out.push_str(&mono.join("*"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qi;

    fn mp(f: Vec<Vec<i64>>) -> MultiPoint {
        MultiPoint::new(f.into_iter().map(|v| v.into_iter().map(qi).collect()).collect()).unwrap()
    }

    #[test]
    fn counts() {
        assert_eq!(generators(2).len(), 1);
        assert_eq!(generators(3).len(), 5);
        assert_eq!(generators(4).len(), 15);
        for n in 1..=8 {
            // brute force over all (i, j, column pair)
            let mut brute = 0;
            for i in 1..=n {
                for j in 1..=n {
                    let c = Label::columns(i);
                    for a in 0..c.len() {
                        for b in 0..c.len() {
                            brute += usize::from(i < j && a < b);
                        }
                    }
                }
            }
            assert_eq!(generators(n).len(), brute);
            assert_eq!(generator_count(n), brute);
        }
    }

    #[test]
    fn evaluation_examples() {
        let g = generators(2)[0];
        assert!(evaluate(&g, &mp(vec![vec![1, 4], vec![1, 2, 3]])).is_zero());
        assert_eq!(evaluate(&g, &mp(vec![vec![1, 1], vec![1, 2, 3]])), qi(-3));
        assert_eq!(is_member(&mp(vec![vec![1, 1], vec![1, 2, 3]])), vec![g]);
        // equal columns
        assert!(evaluate(&g, &mp(vec![vec![1, 1], vec![1, 1, 1]])).is_zero());
    }

    #[test]
    fn n2_polynomial_text() {
        assert_eq!(
            expanded(&generators(2)[0]),
            "x1_b*x2_b*x2_c - x1_b*x2_c*x2_1 - x1_c*x2_b*x2_c + x1_c*x2_b*x2_1"
        );
    }

    #[test]
    fn expansion_agrees_with_evaluation() {
        // evaluate the printed polynomial by substituting distinct primes
        let p = mp(vec![vec![2, 3], vec![5, 7, 11], vec![13, 17, 19, 23]]);
        for g in generators(3) {
            let mut total = qi(0);
            for term in expanded(&g).replace(" - ", " + -").split(" + ") {
                let (neg, body) = term.strip_prefix('-').map_or((false, term), |b| (true, b));
                let mut val = qi(if neg { -1 } else { 1 });
                for var in body.split('*') {
                    let (f, l) = var[1..].split_once('_').unwrap();
                    let i: u32 = f.parse().unwrap();
                    val *= p.get(i, l.parse().unwrap()).clone();
                }
                total += val;
            }
            assert_eq!(total, evaluate(&g, &p), "{g}");
        }
    }
}
