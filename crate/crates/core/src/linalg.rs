//! Exact linear algebra over `Q`: fraction-free rank, reduced row echelon
//! form, kernels and row-space comparison.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exact::Rational;

/// Rows scaled by their denominators' lcm into integer rows.
fn integer_rows(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

/// Rank by fraction-free (Bareiss) elimination; pivots are taken in the
/// earliest column that has a nonzero entry below the current row.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut a = integer_rows(rows);
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&k| !a[k][c].is_zero()) else { continue };
        a.swap(r, p);
        for k in r + 1..a.len() {
            if a[k][c].is_zero() && a[k].iter().all(Zero::is_zero) {
                continue;
            }
            let f = a[k][c].clone();
            for col in c..ncols {
                let v = &a[r][c] * &a[k][col] - &f * &a[r][col];
                debug_assert!((&v % &prev).is_zero(), "Bareiss division must be exact");
                a[k][col] = v / &prev;
            }
        }
        prev = a[r][c].clone();
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

/// Reduced row echelon form and pivot columns.
pub fn rref(rows: &[Vec<Rational>]) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut a: Vec<Vec<Rational>> = rows.to_vec();
    let ncols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&k| !a[k][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = Rational::one() / &a[r][c];
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (k, row) in a.iter_mut().enumerate() {
            if k != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    a.truncate(r);
    (a, pivots)
}

/// A basis of `{x : A x = 0}` for `A` with `ncols` columns.
pub fn kernel(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref(rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Whether two families of vectors span the same subspace.
pub fn same_span(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> bool {
    let ra = rank(a);
    let rb = rank(b);
    let both: Vec<Vec<Rational>> = a.iter().chain(b).cloned().collect();
    ra == rb && rank(&both) == ra
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}
