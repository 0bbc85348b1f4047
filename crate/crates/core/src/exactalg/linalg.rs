//! Fraction-free elimination over `Q` and exact eigenprojectors.
//!
//! Rows are cleared of denominators and reduced with Bareiss' one-step
//! fraction-free scheme, so every intermediate entry is an integer minor.
//! Back substitution then runs in `Q`.

use num::bigint::BigInt;
use num::integer::Integer;
use num::{One, Zero};

use super::matrix::MatrixOperator;
use super::scalar::{q_to_text, Scalar, Q};
use crate::error::{Error, Result};

/// Outcome of [`solve_linear`].
#[derive(Clone, Debug, PartialEq)]
pub enum Solution {
    /// `particular + span(kernel)` is the full solution set.
    Consistent { particular: Vec<Q>, kernel: Vec<Vec<Q>> },
    Inconsistent,
}

fn integer_row(row: &[Q]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

/// Bareiss row echelon form. Returns the echelon rows and the pivot columns.
fn bareiss_echelon(mut m: Vec<Vec<BigInt>>) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (head, tail) = m.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            if row[c].is_zero() {
                for x in row.iter_mut().skip(c + 1) {
                    *x = &*x * &pivot_row[c] / &prev;
                }
                continue;
            }
            for j in c + 1..cols {
                let v = &row[j] * &pivot_row[c] - &row[c] * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

/// Solves `U x = rhs` on echelon rows; free variables are given in `x`.
fn back_substitute(echelon: &[Vec<BigInt>], pivots: &[usize], x: &mut [Q], rhs: impl Fn(usize) -> Q) {
    for (r, &pc) in pivots.iter().enumerate().rev() {
        let row = &echelon[r];
        let mut acc = rhs(r);
        for (j, xj) in x.iter().enumerate().skip(pc + 1) {
            if !row[j].is_zero() && !xj.is_zero() {
                acc -= Q::from_integer(row[j].clone()) * xj;
            }
        }
        x[pc] = acc / Q::from_integer(row[pc].clone());
    }
}

pub fn rank(a: &[Vec<Q>]) -> usize {
    let ints: Vec<Vec<BigInt>> = a.iter().map(|r| integer_row(r)).collect();
    bareiss_echelon(ints).1.len()
}

/// Basis of `{x : A x = 0}`.
pub fn kernel(a: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let cols = a.first().map_or(0, Vec::len);
    let ints: Vec<Vec<BigInt>> = a.iter().map(|r| integer_row(r)).collect();
    let (ech, pivots) = bareiss_echelon(ints);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Q::zero(); cols];
            x[f] = Q::one();
            back_substitute(&ech, &pivots, &mut x, |_| Q::zero());
            x
        })
        .collect()
}

/// Exact solution set of `A x = b`.
pub fn solve_linear(a: &[Vec<Q>], b: &[Q]) -> Solution {
    assert_eq!(a.len(), b.len(), "right-hand side length");
    let cols = a.first().map_or(0, Vec::len);
    let aug: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut row = r.clone();
            row.push(bi.clone());
            integer_row(&row)
        })
        .collect();
    let (ech, pivots) = bareiss_echelon(aug);
    if pivots.last() == Some(&cols) {
        return Solution::Inconsistent;
    }
    let mut particular = vec![Q::zero(); cols];
    let rhs: Vec<Q> = ech.iter().map(|r| Q::from_integer(r[cols].clone())).collect();
    let trimmed: Vec<Vec<BigInt>> = ech.iter().map(|r| r[..cols].to_vec()).collect();
    back_substitute(&trimmed, &pivots, &mut particular, |r| rhs[r].clone());
    Solution::Consistent {
        particular,
        kernel: kernel(a),
    }
}

/// Inverse of a dense square matrix via fraction-free elimination.
pub(crate) fn bareiss_inverse(a: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = a.len();
    // scale rows to integers: A' = D A, so A^{-1} = A'^{-1} D
    let mut scales = Vec::with_capacity(n);
    let mut aug = Vec::with_capacity(n);
    for (i, row) in a.iter().enumerate() {
        let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let mut ints: Vec<BigInt> = row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
        ints.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
        scales.push(Q::from_integer(lcm));
        aug.push(ints);
    }
    let (ech, pivots) = bareiss_echelon(aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    let upper: Vec<Vec<BigInt>> = ech.iter().map(|r| r[..n].to_vec()).collect();
    let mut inv_cols = Vec::with_capacity(n);
    for c in 0..n {
        let mut x = vec![Q::zero(); n];
        back_substitute(&upper, &pivots, &mut x, |r| Q::from_integer(ech[r][n + c].clone()));
        inv_cols.push(x);
    }
    Some(
        (0..n)
            .map(|i| (0..n).map(|j| &inv_cols[j][i] * &scales[j]).collect())
            .collect(),
    )
}

/// Spectral projectors `Π_c = ∏_{c'≠c} (M − c')/(c − c')`.
///
/// The claimed spectrum must annihilate `M`; this is checked, not assumed.
pub fn eigenprojectors<T: Scalar>(m: &MatrixOperator<T>, spectrum: &[T]) -> Result<Vec<MatrixOperator<T>>> {
    for (i, a) in spectrum.iter().enumerate() {
        if spectrum[i + 1..].contains(a) {
            return Err(Error::Spectrum(format!("repeated eigenvalue {a:?}")));
        }
    }
    let basis = m.basis().clone();
    let id = MatrixOperator::<T>::identity(basis.clone());
    let shifted: Vec<MatrixOperator<T>> = spectrum.iter().map(|c| m.sub(&id.scale(c))).collect();
    let annihilator = MatrixOperator::product(basis.clone(), shifted.iter());
    if !annihilator.is_zero() {
        let j = (0..annihilator.dim()).find(|&j| !annihilator.column(j).is_empty()).unwrap();
        return Err(Error::Spectrum(format!(
            "{} nonzero entries remain, first in the column of {}",
            annihilator.nnz(),
            basis.get(j)
        )));
    }
    Ok(spectrum
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut p = id.clone();
            for (j, cj) in spectrum.iter().enumerate() {
                if i != j {
                    let denom = c.clone() - cj.clone();
                    p = p.mul(&shifted[j]).scale(&(T::one() / denom));
                }
            }
            p
        })
        .collect())
}

/// Display helper for dense rational vectors.
pub fn format_vector(v: &[Q]) -> String {
    let parts: Vec<String> = v.iter().map(q_to_text).collect();
    format!("[{}]", parts.join(", "))
}
