//! Polynomials in `k·n` anticommuting variables `x[a,i]`.
//!
//! Variables are ordered column-major: `x[1,1], x[2,1], …, x[k,1], x[1,2], …`.
//! A variable at row `a`, column `i` (both 0-based in code) sits at position
//! `i·k + a`. Every sign in the crate is measured against this order.
//! Text forms use 1-based indices, `x[a,i]`.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::exactalg::scalar::{q_to_text, Q};

/// Bit words of a monomial. One inline word covers `k·n ≤ 64`; larger shapes
/// spill to the heap with position `p` stored in word `p / 64`, bit `p % 64`.
type Words = SmallVec<[u64; 1]>;

/// Occupancy matrix `d ∈ {0,1}^{k×n}` of a basis monomial `x^d`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    k: u16,
    n: u16,
    words: Words,
}

fn word_count(k: usize, n: usize) -> usize {
    (k * n).div_ceil(64).max(1)
}

impl Monomial {
    /// The empty monomial `1`.
    pub fn one(k: usize, n: usize) -> Self {
        assert!(k > 0 && n > 0, "shape must be positive");
        Monomial {
            k: k as u16,
            n: n as u16,
            words: SmallVec::from_elem(0, word_count(k, n)),
        }
    }

    /// Builds from the low `k·n` bits of `bits` (requires `k·n ≤ 64`).
    pub fn from_bits(k: usize, n: usize, bits: u64) -> Self {
        assert!(k * n <= 64, "from_bits needs k*n <= 64");
        let mut m = Self::one(k, n);
        let mask = if k * n == 64 { u64::MAX } else { (1u64 << (k * n)) - 1 };
        m.words[0] = bits & mask;
        m
    }

    /// Builds from a `k×n` 0/1 matrix given row by row.
    pub fn from_matrix(rows: &[Vec<u8>]) -> Result<Self> {
        let k = rows.len();
        let n = rows.first().map_or(0, |r| r.len());
        if k == 0 || n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Argument("occupancy matrix must be rectangular and nonempty".into()));
        }
        let mut m = Self::one(k, n);
        for (a, row) in rows.iter().enumerate() {
            for (i, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => m.set(i * k + a, true),
                    _ => return Err(Error::Argument("occupancy entries must be 0 or 1".into())),
                }
            }
        }
        Ok(m)
    }

    pub fn from_positions(k: usize, n: usize, positions: &[usize]) -> Result<Self> {
        let mut m = Self::one(k, n);
        for &p in positions {
            if p >= k * n {
                return Err(Error::Argument(format!("position {p} out of range")));
            }
            m.set(p, true);
        }
        Ok(m)
    }

    pub fn k(&self) -> usize {
        self.k as usize
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.k(), self.n())
    }

    pub fn position(&self, row: usize, col: usize) -> Result<usize> {
        if row >= self.k() || col >= self.n() {
            return Err(Error::Argument(format!(
                "variable ({row},{col}) out of range for shape {}x{}",
                self.k,
                self.n
            )));
        }
        Ok(col * self.k() + row)
    }

    pub fn contains(&self, p: usize) -> bool {
        self.words[p / 64] >> (p % 64) & 1 == 1
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.contains(col * self.k() + row)
    }

    fn set(&mut self, p: usize, on: bool) {
        if on {
            self.words[p / 64] |= 1 << (p % 64);
        } else {
            self.words[p / 64] &= !(1 << (p % 64));
        }
    }

    pub fn degree(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of present variables strictly before position `p`.
    pub fn count_before(&self, p: usize) -> usize {
        let full: usize = self.words[..p / 64].iter().map(|w| w.count_ones() as usize).sum();
        let low = self.words[p / 64] & ((1u64 << (p % 64)) - 1);
        full + low.count_ones() as usize
    }

    /// Present positions in canonical order.
    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.k() * self.n()).filter(move |&p| self.contains(p))
    }

    /// The bits as one word, when the shape fits.
    pub fn bits(&self) -> Option<u64> {
        (self.words.len() == 1).then(|| self.words[0])
    }

    pub fn row_sums(&self) -> Vec<usize> {
        (0..self.k())
            .map(|a| (0..self.n()).filter(|&i| self.get(a, i)).count())
            .collect()
    }

    pub fn col_sums(&self) -> Vec<usize> {
        (0..self.n())
            .map(|i| (0..self.k()).filter(|&a| self.get(a, i)).count())
            .collect()
    }

    pub(crate) fn with(&self, p: usize, on: bool) -> Monomial {
        let mut m = self.clone();
        m.set(p, on);
        m
    }

    /// Positions of present variables listed row by row (`x[1,1] … x[1,n] x[2,1] …`).
    pub fn row_major_positions(&self) -> Vec<usize> {
        let k = self.k();
        (0..k)
            .flat_map(|a| (0..self.n()).map(move |i| i * k + a))
            .filter(|&p| self.contains(p))
            .collect()
    }
}

impl Ord for Monomial {
    /// Shape first, then the canonical bitstring read as a binary number
    /// with `x[1,1]` as the least significant digit.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.k, self.n)
            .cmp(&(other.k, other.n))
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return write!(f, "1");
        }
        let k = self.k();
        let factors: Vec<String> = self
            .positions()
            .map(|p| format!("x[{},{}]", p % k + 1, p / k + 1))
            .collect();
        write!(f, "{}", factors.join("*"))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Finitely supported combination of monomials with exact coefficients.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparseVector {
    k: usize,
    n: usize,
    terms: BTreeMap<Monomial, Q>,
}

impl SparseVector {
    pub fn zero(k: usize, n: usize) -> Self {
        SparseVector {
            k,
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, Q::one())
    }

    pub fn term(m: Monomial, c: Q) -> Self {
        let mut v = Self::zero(m.k(), m.n());
        v.add_term(m, c);
        v
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.k, self.n)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        assert_eq!(m.shape(), (self.k, self.n), "monomial shape mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &SparseVector) -> Result<SparseVector> {
        check_shapes(self, other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> SparseVector {
        if c.is_zero() {
            return Self::zero(self.k, self.n);
        }
        SparseVector {
            k: self.k,
            n: self.n,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }
}

fn check_shapes(v: &SparseVector, w: &SparseVector) -> Result<()> {
    if v.shape() != w.shape() {
        return Err(Error::Argument(format!(
            "shape mismatch: {:?} vs {:?}",
            v.shape(),
            w.shape()
        )));
    }
    Ok(())
}

impl fmt::Display for SparseVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{} {m}", q_to_text(&a))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SparseVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Image of one monomial under left multiplication by the variable at `p`.
pub(crate) fn wedge_monomial(m: &Monomial, p: usize) -> Option<(Monomial, i32)> {
    if m.contains(p) {
        return None;
    }
    let sign = if m.count_before(p) % 2 == 0 { 1 } else { -1 };
    Some((m.with(p, true), sign))
}

/// Image of one monomial under the left derivation at `p`.
pub(crate) fn derive_monomial(m: &Monomial, p: usize) -> Option<(Monomial, i32)> {
    if !m.contains(p) {
        return None;
    }
    let sign = if m.count_before(p) % 2 == 0 { 1 } else { -1 };
    Some((m.with(p, false), sign))
}

/// Word-level `x_p ∂_q` on a bitset, used by the matrix builders.
pub(crate) fn x_d_bits(bits: u64, p: usize, q: usize) -> Option<(u64, i32)> {
    if bits >> q & 1 == 0 {
        return None;
    }
    let mut sign = (bits & ((1u64 << q) - 1)).count_ones();
    let rest = bits & !(1u64 << q);
    if rest >> p & 1 == 1 {
        return None;
    }
    sign += (rest & ((1u64 << p) - 1)).count_ones();
    Some((rest | 1u64 << p, if sign % 2 == 0 { 1 } else { -1 }))
}

fn apply_each(
    v: &SparseVector,
    row: usize,
    col: usize,
    f: fn(&Monomial, usize) -> Option<(Monomial, i32)>,
) -> Result<SparseVector> {
    if row >= v.k || col >= v.n {
        return Err(Error::Argument(format!(
            "variable ({row},{col}) out of range for shape {}x{}",
            v.k, v.n
        )));
    }
    let p = col * v.k + row;
    let mut out = SparseVector::zero(v.k, v.n);
    for (m, c) in v.terms() {
        if let Some((img, s)) = f(m, p) {
            out.add_term(img, if s > 0 { c.clone() } else { -c.clone() });
        }
    }
    Ok(out)
}

/// Left multiplication `x[row,col] ∧ v` (0-based indices).
pub fn wedge_left(row: usize, col: usize, v: &SparseVector) -> Result<SparseVector> {
    apply_each(v, row, col, wedge_monomial)
}

/// Left derivation `∂[row,col] v` (0-based indices).
pub fn derive_left(row: usize, col: usize, v: &SparseVector) -> Result<SparseVector> {
    apply_each(v, row, col, derive_monomial)
}

/// Bilinear form in which monomials are orthonormal.
pub fn scalar_product(v: &SparseVector, w: &SparseVector) -> Result<Q> {
    check_shapes(v, w)?;
    let (small, large) = if v.len() <= w.len() { (v, w) } else { (w, v) };
    Ok(small
        .terms()
        .filter_map(|(m, c)| large.terms.get(m).map(|d| c * d))
        .fold(Q::zero(), |acc, x| acc + x))
}

/// Sign of the permutation sorting `order` into canonical (increasing) order.
pub fn reorder_sign(order: &[usize]) -> Result<i32> {
    let mut seen = std::collections::HashSet::new();
    if !order.iter().all(|p| seen.insert(*p)) {
        return Err(Error::Argument("repeated variable position".into()));
    }
    let inversions = (0..order.len())
        .flat_map(|i| (i + 1..order.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| order[i] > order[j])
        .count();
    Ok(if inversions % 2 == 0 { 1 } else { -1 })
}

/// `ε(d)`: the row-major product of present variables equals `ε(d)·x^d`.
pub fn epsilon_sign(d: &Monomial) -> i32 {
    // (x[a,i], x[b,j]) with a < b is out of canonical order iff j < i
    let (k, n) = d.shape();
    let mut above = vec![0usize; n];
    let mut inversions = 0usize;
    for b in 0..k {
        for j in 0..n {
            if d.get(b, j) {
                inversions += above[j + 1..].iter().sum::<usize>();
            }
        }
        for (i, slot) in above.iter_mut().enumerate() {
            if d.get(b, i) {
                *slot += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// An ordered list of monomials with reverse lookup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    k: usize,
    n: usize,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Basis {
    /// All `2^{kn}` monomials in increasing order; the index of a monomial
    /// equals its bit value.
    pub fn full(k: usize, n: usize) -> Self {
        assert!(k * n <= 24, "full basis limited to k*n <= 24");
        let monomials = (0..1u64 << (k * n)).map(|b| Monomial::from_bits(k, n, b)).collect();
        Self::from_sorted(k, n, monomials)
    }

    pub fn new(k: usize, n: usize, mut monomials: Vec<Monomial>) -> Result<Self> {
        if monomials.iter().any(|m| m.shape() != (k, n)) {
            return Err(Error::Argument("basis monomials must share the shape".into()));
        }
        monomials.sort();
        monomials.dedup();
        Ok(Self::from_sorted(k, n, monomials))
    }

    fn from_sorted(k: usize, n: usize, monomials: Vec<Monomial>) -> Self {
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Basis {
            k,
            n,
            monomials,
            index,
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.k, self.n)
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn get(&self, i: usize) -> &Monomial {
        &self.monomials[i]
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn is_full(&self) -> bool {
        self.monomials.len() == 1usize << (self.k * self.n)
    }

    /// Dense coordinates of `v`; errors if `v` leaves the basis span.
    pub fn coordinates(&self, v: &SparseVector) -> Result<Vec<Q>> {
        let mut out = vec![Q::zero(); self.len()];
        for (m, c) in v.terms() {
            let i = self
                .index_of(m)
                .ok_or_else(|| Error::Integrity(format!("{m} is outside the basis")))?;
            out[i] = c.clone();
        }
        Ok(out)
    }

    pub fn vector(&self, coords: &[Q]) -> SparseVector {
        let mut v = SparseVector::zero(self.k, self.n);
        for (m, c) in self.monomials.iter().zip(coords) {
            v.add_term(m.clone(), c.clone());
        }
        v
    }
}
