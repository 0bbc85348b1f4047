//! Exact scalars and the field abstraction shared by every matrix in the crate.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

/// Reduced arbitrary-precision rational with positive denominator.
pub type Q = BigRational;

/// A commutative field whose arithmetic is exact.
///
/// Implemented by [`Q`] and by [`UniRatFun`](super::UniRatFun). Every
/// operator constructor is generic over this trait, so the same code builds a
/// matrix at a numeric point or with one symbolic variable.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_q(q: Q) -> Self;

    fn from_int(i: i64) -> Self {
        Self::from_q(Q::from_integer(BigInt::from(i)))
    }

    /// Inverts a dense square block, `None` when singular.
    fn invert_dense(block: Vec<Vec<Self>>) -> Option<Vec<Vec<Self>>> {
        gauss_jordan_inverse(block)
    }
}

impl Scalar for Q {
    fn from_q(q: Q) -> Self {
        q
    }

    fn invert_dense(block: Vec<Vec<Self>>) -> Option<Vec<Vec<Self>>> {
        super::linalg::bareiss_inverse(&block)
    }
}

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(num: i64) -> Q {
    Q::from_integer(BigInt::from(num))
}

/// `p/q` form used in JSON (always carries the denominator).
pub fn q_to_fraction_string(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Compact text form: integers print bare, everything else as `p/q`.
pub fn q_to_text(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p`, `p/q`, or `-p/q`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, d)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Q::new(p, d))
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

pub fn sign_q(s: i32) -> Q {
    if s < 0 {
        -Q::one()
    } else {
        Q::one()
    }
}

pub(crate) fn gauss_jordan_inverse<T: Scalar>(mut a: Vec<Vec<T>>) -> Option<Vec<Vec<T>>> {
    let n = a.len();
    let mut inv: Vec<Vec<T>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = a[col][j].clone() / p.clone();
            inv[col][j] = inv[col][j].clone() / p.clone();
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let t = a[col][j].clone();
                if !t.is_zero() {
                    a[r][j] = a[r][j].clone() - f.clone() * t;
                }
                let t = inv[col][j].clone();
                if !t.is_zero() {
                    inv[r][j] = inv[r][j].clone() - f.clone() * t;
                }
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_forms() {
        assert_eq!(q_to_text(&q(6, 4)), "3/2");
        assert_eq!(q_to_text(&qi(-2)), "-2");
        assert_eq!(q_to_fraction_string(&qi(-2)), "-2/1");
        assert_eq!(parse_q("5/2"), Some(q(5, 2)));
        assert_eq!(parse_q("-3"), Some(qi(-3)));
        assert_eq!(parse_q("1/0"), None);
        assert_eq!(parse_q("x"), None);
    }

    #[test]
    fn gauss_jordan_matches_bareiss() {
        let m = vec![
            vec![qi(2), qi(1), qi(0)],
            vec![q(1, 3), qi(0), qi(5)],
            vec![qi(0), qi(-1), q(7, 2)],
        ];
        assert_eq!(gauss_jordan_inverse(m.clone()), Q::invert_dense(m));
    }
}
