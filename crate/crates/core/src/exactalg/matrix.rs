//! Sparse exact matrices on an explicit monomial basis.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::Zero;

use super::ratfun::UniRatFun;
use super::scalar::{q_to_text, Scalar, Q};
use crate::error::{Error, Result};
use crate::exterior::{Basis, SparseVector};

/// Square matrix whose rows and columns are indexed by `basis`.
///
/// Rows are stored as column-sorted lists without zero entries, so derived
/// equality is exact matrix equality.
#[derive(Clone, PartialEq)]
pub struct MatrixOperator<T> {
    basis: Arc<Basis>,
    rows: Vec<Vec<(usize, T)>>,
}

fn same_basis(a: &Arc<Basis>, b: &Arc<Basis>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl<T: Scalar> MatrixOperator<T> {
    pub fn zero(basis: Arc<Basis>) -> Self {
        let rows = vec![Vec::new(); basis.len()];
        MatrixOperator { basis, rows }
    }

    pub fn identity(basis: Arc<Basis>) -> Self {
        let rows = (0..basis.len()).map(|i| vec![(i, T::one())]).collect();
        MatrixOperator { basis, rows }
    }

    pub fn diagonal(basis: Arc<Basis>, diag: Vec<T>) -> Self {
        assert_eq!(diag.len(), basis.len());
        let rows = diag
            .into_iter()
            .enumerate()
            .map(|(i, d)| if d.is_zero() { vec![] } else { vec![(i, d)] })
            .collect();
        MatrixOperator { basis, rows }
    }

    /// Builds from `(row, col, value)` triplets; repeated positions add up.
    pub fn from_triplets(basis: Arc<Basis>, triplets: impl IntoIterator<Item = (usize, usize, T)>) -> Self {
        let mut acc: Vec<BTreeMap<usize, T>> = vec![BTreeMap::new(); basis.len()];
        for (i, j, v) in triplets {
            let slot = acc[i].entry(j).or_insert_with(T::zero);
            *slot = slot.clone() + v;
        }
        let rows = acc.into_iter().map(prune).collect();
        MatrixOperator { basis, rows }
    }

    pub fn basis(&self) -> &Arc<Basis> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, i: usize) -> &[(usize, T)] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        match self.rows[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(p) => self.rows[i][p].1.clone(),
            Err(_) => T::zero(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn is_diagonal(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, r)| r.iter().all(|(j, _)| *j == i))
    }

    fn check(&self, other: &Self) {
        assert!(same_basis(&self.basis, &other.basis), "matrix bases differ");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| merge(a, b, |x, y| x + y))
            .collect();
        MatrixOperator {
            basis: self.basis.clone(),
            rows,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero(self.basis.clone());
        }
        self.map(|x| x.clone() * c.clone())
    }

    /// `self · diag(d)`.
    pub fn scale_columns(&self, d: &[T]) -> Self {
        assert_eq!(d.len(), self.dim());
        let rows = self
            .rows
            .iter()
            .map(|r| prune_vec(r.iter().map(|(j, v)| (*j, v.clone() * d[*j].clone())).collect()))
            .collect();
        MatrixOperator {
            basis: self.basis.clone(),
            rows,
        }
    }

    /// `diag(d) · self`.
    pub fn scale_rows(&self, d: &[T]) -> Self {
        assert_eq!(d.len(), self.dim());
        let rows = self
            .rows
            .iter()
            .zip(d)
            .map(|(r, di)| prune_vec(r.iter().map(|(j, v)| (*j, di.clone() * v.clone())).collect()))
            .collect();
        MatrixOperator {
            basis: self.basis.clone(),
            rows,
        }
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, T> = BTreeMap::new();
                for (j, a) in row {
                    for (l, b) in &other.rows[*j] {
                        let prod = a.clone() * b.clone();
                        match acc.get_mut(l) {
                            Some(s) => *s = s.clone() + prod,
                            None => {
                                acc.insert(*l, prod);
                            }
                        }
                    }
                }
                prune(acc)
            })
            .collect();
        MatrixOperator {
            basis: self.basis.clone(),
            rows,
        }
    }

    /// Product of a sequence, left to right; identity when empty.
    pub fn product<'a>(basis: Arc<Basis>, factors: impl IntoIterator<Item = &'a Self>) -> Self
    where
        T: 'a,
    {
        let mut acc: Option<Self> = None;
        for f in factors {
            acc = Some(match acc {
                None => f.clone(),
                Some(a) => a.mul(f),
            });
        }
        acc.unwrap_or_else(|| Self::identity(basis))
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn transpose(&self) -> Self {
        let mut rows: Vec<Vec<(usize, T)>> = vec![Vec::new(); self.dim()];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                rows[*j].push((i, v.clone()));
            }
        }
        MatrixOperator {
            basis: self.basis.clone(),
            rows,
        }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> MatrixOperator<U> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|(j, v)| (*j, f(v))).filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        MatrixOperator {
            basis: self.basis.clone(),
            rows,
        }
    }

    pub fn try_map<U: Scalar>(&self, f: impl Fn(&T) -> Result<U>) -> Result<MatrixOperator<U>> {
        let mut rows = Vec::with_capacity(self.dim());
        for r in &self.rows {
            let mut out = Vec::with_capacity(r.len());
            for (j, v) in r {
                let u = f(v)?;
                if !u.is_zero() {
                    out.push((*j, u));
                }
            }
            rows.push(out);
        }
        Ok(MatrixOperator {
            basis: self.basis.clone(),
            rows,
        })
    }

    /// Column `j` as `(row, value)` pairs.
    pub fn column(&self, j: usize) -> Vec<(usize, T)> {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| {
                r.binary_search_by_key(&j, |(c, _)| *c)
                    .ok()
                    .map(|p| (i, r[p].1.clone()))
            })
            .collect()
    }

    /// First column on which the two matrices differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        self.check(other);
        let diff = self.sub(other).transpose();
        diff.rows.iter().position(|r| !r.is_empty())
    }

    /// Restriction to a sub-basis that must be invariant.
    pub fn restrict(&self, sub: Arc<Basis>) -> Result<Self> {
        let mut rows = Vec::with_capacity(sub.len());
        let map: Vec<usize> = sub
            .monomials()
            .iter()
            .map(|m| {
                self.basis
                    .index_of(m)
                    .ok_or_else(|| Error::Argument(format!("{m} is not in the ambient basis")))
            })
            .collect::<Result<_>>()?;
        let mut back = std::collections::HashMap::new();
        for (s, &a) in map.iter().enumerate() {
            back.insert(a, s);
        }
        let t = self.transpose();
        // columns of `self` restricted to sub: entries must stay inside sub
        let mut cols: Vec<Vec<(usize, T)>> = Vec::with_capacity(sub.len());
        for &a in &map {
            let mut col = Vec::new();
            for (i, v) in &t.rows[a] {
                match back.get(i) {
                    Some(&s) => col.push((s, v.clone())),
                    None => {
                        return Err(Error::Integrity(format!(
                            "basis not invariant: {} maps onto {}",
                            self.basis.get(a),
                            self.basis.get(*i)
                        )))
                    }
                }
            }
            cols.push(col);
        }
        rows.resize(sub.len(), Vec::new());
        for (j, col) in cols.into_iter().enumerate() {
            for (i, v) in col {
                rows[i].push((j, v));
            }
        }
        for r in &mut rows {
            r.sort_by_key(|(j, _)| *j);
        }
        Ok(MatrixOperator { basis: sub, rows })
    }

    /// Extension by zero from this basis to a larger one containing it.
    pub fn embed(&self, ambient: Arc<Basis>) -> Result<Self> {
        let map: Vec<usize> = self
            .basis
            .monomials()
            .iter()
            .map(|m| {
                ambient
                    .index_of(m)
                    .ok_or_else(|| Error::Argument(format!("{m} is not in the ambient basis")))
            })
            .collect::<Result<_>>()?;
        let mut rows = vec![Vec::new(); ambient.len()];
        for (i, r) in self.rows.iter().enumerate() {
            let mut row: Vec<(usize, T)> = r.iter().map(|(j, v)| (map[*j], v.clone())).collect();
            row.sort_by_key(|(j, _)| *j);
            rows[map[i]] = row;
        }
        Ok(MatrixOperator { basis: ambient, rows })
    }

    /// Exact inverse. The matrix is split into the connected components of
    /// its nonzero pattern and each block is inverted densely.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.dim();
        let mut uf = UnionFind::new(n);
        for (i, r) in self.rows.iter().enumerate() {
            for (j, _) in r {
                uf.union(i, *j);
            }
        }
        let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..n {
            comps.entry(uf.find(i)).or_default().push(i);
        }
        let mut triplets = Vec::new();
        for members in comps.values() {
            let local: std::collections::HashMap<usize, usize> =
                members.iter().enumerate().map(|(l, &g)| (g, l)).collect();
            let m = members.len();
            let mut block = vec![vec![T::zero(); m]; m];
            for (li, &gi) in members.iter().enumerate() {
                for (gj, v) in &self.rows[gi] {
                    block[li][local[gj]] = v.clone();
                }
            }
            let inv = match T::invert_dense(block.clone()) {
                Some(inv) => inv,
                None => {
                    let rank = self.rank_hint(&block);
                    return Err(Error::Singular {
                        rank: n - m + rank,
                        dim: n,
                    });
                }
            };
            for (li, row) in inv.into_iter().enumerate() {
                for (lj, v) in row.into_iter().enumerate() {
                    if !v.is_zero() {
                        triplets.push((members[li], members[lj], v));
                    }
                }
            }
        }
        Ok(Self::from_triplets(self.basis.clone(), triplets))
    }

    fn rank_hint(&self, block: &[Vec<T>]) -> usize {
        generic_rank(block.to_vec())
    }

    /// Dense copy, row-major.
    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let mut d = vec![vec![T::zero(); self.dim()]; self.dim()];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r {
                d[i][*j] = v.clone();
            }
        }
        d
    }

    pub fn trace(&self) -> T {
        (0..self.dim()).fold(T::zero(), |acc, i| acc + self.get(i, i))
    }
}

impl MatrixOperator<Q> {
    pub fn apply(&self, v: &SparseVector) -> Result<SparseVector> {
        let coords = self.basis.coordinates(v)?;
        let out: Vec<Q> = self
            .rows
            .iter()
            .map(|r| r.iter().fold(Q::zero(), |acc, (j, a)| acc + a * &coords[*j]))
            .collect();
        Ok(self.basis.vector(&out))
    }

    /// Column `j` as a polynomial vector (used for failure witnesses).
    pub fn column_vector(&self, j: usize) -> SparseVector {
        let (k, n) = self.basis.shape();
        let mut v = SparseVector::zero(k, n);
        for (i, c) in self.column(j) {
            v.add_term(self.basis.get(i).clone(), c);
        }
        v
    }

    pub fn rank(&self) -> usize {
        super::linalg::rank(&self.to_dense())
    }

    pub fn lift<T: Scalar>(&self) -> MatrixOperator<T> {
        self.map(|x| T::from_q(x.clone()))
    }
}

impl MatrixOperator<UniRatFun> {
    pub fn derivative(&self) -> Self {
        self.map(|f| f.derivative())
    }

    pub fn eval(&self, x: &Q) -> Result<MatrixOperator<Q>> {
        self.try_map(|f| f.eval(x))
    }
}

impl fmt::Display for MatrixOperator<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            let entries: Vec<String> = (0..self.dim())
                .map(|j| match r.binary_search_by_key(&j, |(c, _)| *c) {
                    Ok(p) => q_to_text(&r[p].1),
                    Err(_) => "0".into(),
                })
                .collect();
            writeln!(f, "{:<24} [{}]", self.basis.get(i).to_string(), entries.join(", "))?;
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for MatrixOperator<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MatrixOperator")
            .field("dim", &self.rows.len())
            .field("rows", &self.rows)
            .finish()
    }
}

fn prune<T: Scalar>(acc: BTreeMap<usize, T>) -> Vec<(usize, T)> {
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

fn prune_vec<T: Scalar>(row: Vec<(usize, T)>) -> Vec<(usize, T)> {
    row.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

fn merge<T: Scalar>(a: &[(usize, T)], b: &[(usize, T)], f: impl Fn(T, T) -> T) -> Vec<(usize, T)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, f(T::zero(), b[j].1.clone())));
            j += 1;
        } else {
            let v = f(a[i].1.clone(), b[j].1.clone());
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn generic_rank<T: Scalar>(mut a: Vec<Vec<T>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone() / a[r][c].clone();
            for j in c..cols {
                let t = a[r][j].clone();
                a[i][j] = a[i][j].clone() - f.clone() * t;
            }
        }
        r += 1;
    }
    r
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalar::{q, qi};
    use num::One;

    fn basis(dim_bits: usize) -> Arc<Basis> {
        Arc::new(Basis::full(1, dim_bits))
    }

    #[test]
    fn inverse_of_identity_and_diagonal() {
        let b = basis(1);
        let id = MatrixOperator::<Q>::identity(b.clone());
        assert_eq!(id.inverse().unwrap(), id);
        let d = MatrixOperator::diagonal(b.clone(), vec![qi(2), qi(3)]);
        assert_eq!(
            d.inverse().unwrap(),
            MatrixOperator::diagonal(b, vec![q(1, 2), q(1, 3)])
        );
    }

    #[test]
    fn singular_matrix_reports_rank() {
        let b = basis(2);
        let m = MatrixOperator::from_triplets(
            b,
            vec![(0, 0, qi(1)), (0, 1, qi(2)), (1, 0, qi(2)), (1, 1, qi(4)), (2, 2, qi(1)), (3, 3, qi(1))],
        );
        assert_eq!(m.inverse(), Err(Error::Singular { rank: 3, dim: 4 }));
    }

    #[test]
    fn restriction_detects_non_invariant_basis() {
        let full = basis(2);
        let m = MatrixOperator::from_triplets(full.clone(), vec![(1, 0, qi(1))]);
        let sub = Arc::new(Basis::new(1, 2, vec![full.get(0).clone()]).unwrap());
        assert!(matches!(m.restrict(sub), Err(Error::Integrity(_))));
    }

    #[test]
    fn symbolic_entries_differentiate_and_evaluate() {
        let b = basis(1);
        let t = UniRatFun::var(0);
        let m = MatrixOperator::diagonal(b.clone(), vec![t.clone() * t.clone(), UniRatFun::one() / t]);
        let dm = m.derivative().eval(&qi(2)).unwrap();
        assert_eq!(dm, MatrixOperator::diagonal(b, vec![qi(4), q(-1, 4)]));
    }
}
