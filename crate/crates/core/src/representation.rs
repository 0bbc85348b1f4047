//! The commuting `gl_k` and `gl_n` actions on the fermionic space.
//!
//! `gl_k` acts factor by factor on the columns of `x[a,i]`: the generator
//! `e_pq` on factor `i` is `x[p,i] ∂[q,i]`. `gl_n` acts on the rows: `e_pq`
//! on factor `a` is `x[a,p] ∂[a,q]`. Both are even derivations, so they act
//! on products factor by factor without extra signs; the reference
//! implementation for the row factors still goes through the explicit
//! row-major reordering to pin the signs down independently.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num::One;

use crate::error::{Error, Result};
use crate::exactalg::{eigenprojectors, qi, MatrixOperator, Q};
use crate::exterior::{
    derive_left, derive_monomial, epsilon_sign, wedge_left, wedge_monomial, x_d_bits, Basis, Monomial,
    SparseVector,
};

/// Which Lie algebra acts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// `gl_k`, one tensor factor per column `i = 1..n`.
    RowAlgebra,
    /// `gl_n`, one tensor factor per row `a = 1..k`.
    ColumnAlgebra,
}

impl Side {
    /// Size of the acting `gl`.
    pub fn rank(self, k: usize, n: usize) -> usize {
        match self {
            Side::RowAlgebra => k,
            Side::ColumnAlgebra => n,
        }
    }

    /// Number of tensor factors.
    pub fn factors(self, k: usize, n: usize) -> usize {
        match self {
            Side::RowAlgebra => n,
            Side::ColumnAlgebra => k,
        }
    }

    pub fn dual(self) -> Side {
        match self {
            Side::RowAlgebra => Side::ColumnAlgebra,
            Side::ColumnAlgebra => Side::RowAlgebra,
        }
    }

    /// Variable position of the local variable `p` in tensor factor `factor`.
    pub fn position(self, k: usize, factor: usize, p: usize) -> usize {
        match self {
            Side::RowAlgebra => factor * k + p,
            Side::ColumnAlgebra => p * k + factor,
        }
    }

    /// Weight of a monomial under the diagonal action: row sums for `gl_k`,
    /// column sums for `gl_n`.
    pub fn weight(self, d: &Monomial) -> Vec<usize> {
        match self {
            Side::RowAlgebra => d.row_sums(),
            Side::ColumnAlgebra => d.col_sums(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Side::RowAlgebra => "gl_k",
            Side::ColumnAlgebra => "gl_n",
        }
    }
}

/// Joint weight `(l, m)`: `l` are column sums (length `n`), `m` row sums
/// (length `k`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightPair {
    pub l: Vec<usize>,
    pub m: Vec<usize>,
}

impl WeightPair {
    pub fn new(l: Vec<usize>, m: Vec<usize>) -> Result<Self> {
        let (k, n) = (m.len(), l.len());
        if k == 0 || n == 0 {
            return Err(Error::Argument("weight vectors must be nonempty".into()));
        }
        if l.iter().any(|&x| x > k) || m.iter().any(|&x| x > n) {
            return Err(Error::Argument(format!("weight ({l:?}, {m:?}) out of range for {k}x{n}")));
        }
        Ok(WeightPair { l, m })
    }

    pub fn of(d: &Monomial) -> Self {
        WeightPair {
            l: d.col_sums(),
            m: d.row_sums(),
        }
    }

    pub fn is_balanced(&self) -> bool {
        self.l.iter().sum::<usize>() == self.m.iter().sum::<usize>()
    }
}

/// A partition, stored without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionLabel {
    parts: Vec<usize>,
}

impl PartitionLabel {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Argument(format!("{parts:?} is not weakly decreasing")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(PartitionLabel { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn first(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Parts padded with zeros to length `len` (truncation is an error).
    pub fn padded(&self, len: usize) -> Result<Vec<usize>> {
        if self.parts.len() > len {
            return Err(Error::Argument(format!("{self} has more than {len} parts")));
        }
        let mut v = self.parts.clone();
        v.resize(len, 0);
        Ok(v)
    }

    pub fn transpose(&self) -> PartitionLabel {
        let parts = (0..self.first()).map(|j| self.parts.iter().filter(|&&p| p > j).count()).collect();
        PartitionLabel { parts }
    }

    /// `l(m) = (2^m, 1^{m1+m2−2m})` labelling the summands of `V_{m1} ⊗ V_{m2}`.
    pub fn two_column(m1: usize, m2: usize, m: usize) -> PartitionLabel {
        let mut parts = vec![2; m];
        parts.extend(std::iter::repeat(1).take(m1 + m2 - 2 * m));
        PartitionLabel { parts }
    }
}

impl fmt::Display for PartitionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "(0)");
        }
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

fn check_gen(side: Side, k: usize, n: usize, factor: usize, p: usize, q: usize) -> Result<()> {
    let r = side.rank(k, n);
    let f = side.factors(k, n);
    if factor >= f || p >= r || q >= r {
        return Err(Error::Argument(format!(
            "{} generator e_({},{}) on factor {} out of range",
            side.label(),
            p + 1,
            q + 1,
            factor + 1
        )));
    }
    Ok(())
}

/// `(e_pq)_(factor)` applied to `v` (all indices 0-based).
///
/// The `gl_k` side is computed directly as `x[p,i] ∂[q,i]`. The `gl_n` side is
/// the reference path: each monomial is rewritten as the row-major product
/// (sign `ε`), the row factor is acted on inside its own exterior algebra, and
/// the result is written back in canonical order.
pub fn act_generator(side: Side, factor: usize, gen: (usize, usize), v: &SparseVector) -> Result<SparseVector> {
    let (k, n) = v.shape();
    let (p, q) = gen;
    check_gen(side, k, n, factor, p, q)?;
    match side {
        Side::RowAlgebra => wedge_left(p, factor, &derive_left(q, factor, v)?),
        Side::ColumnAlgebra => {
            let mut out = SparseVector::zero(k, n);
            for (d, c) in v.terms() {
                if let Some((img, s)) = column_action_reference(d, factor, p, q) {
                    out.add_term(img, if s > 0 { c.clone() } else { -c.clone() });
                }
            }
            Ok(out)
        }
    }
}

fn column_action_reference(d: &Monomial, a: usize, p: usize, q: usize) -> Option<(Monomial, i32)> {
    let (k, n) = d.shape();
    let row: Vec<usize> = (0..n).filter(|&i| d.get(a, i)).collect();
    let local = Monomial::from_positions(1, n, &row).expect("row positions are valid");
    let (mid, s1) = derive_monomial(&local, q)?;
    let (img, s2) = wedge_monomial(&mid, p)?;
    let mut out = Monomial::one(k, n);
    for b in 0..k {
        for i in 0..n {
            let on = if b == a { img.contains(i) } else { d.get(b, i) };
            if on {
                out = out.with(i * k + b, true);
            }
        }
    }
    Some((out.clone(), epsilon_sign(d) * s1 * s2 * epsilon_sign(&out)))
}

/// All `0/1` matrices with column sums `l` and row sums `m`, in increasing
/// monomial order (numeric order of the bitset, `x[1,1]` least significant).
pub fn weight_basis(wp: &WeightPair) -> Vec<Monomial> {
    let (k, n) = (wp.m.len(), wp.l.len());
    if !wp.is_balanced() || k == 0 || n == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut rows_left = wp.m.clone();
    let mut chosen: Vec<usize> = Vec::new();
    fill_column(k, n, 0, &wp.l, &mut rows_left, &mut chosen, &mut out);
    out.sort();
    out
}

fn fill_column(
    k: usize,
    n: usize,
    col: usize,
    l: &[usize],
    rows_left: &mut Vec<usize>,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Monomial>,
) {
    if col == n {
        if rows_left.iter().all(|&r| r == 0) {
            out.push(Monomial::from_positions(k, n, chosen).expect("valid positions"));
        }
        return;
    }
    // remaining columns must be able to absorb the remaining row sums
    if rows_left.iter().any(|&r| r > n - col) {
        return;
    }
    for subset in 0u32..1 << k {
        if subset.count_ones() as usize != l[col] {
            continue;
        }
        if (0..k).any(|a| subset >> a & 1 == 1 && rows_left[a] == 0) {
            continue;
        }
        let before = chosen.len();
        for a in 0..k {
            if subset >> a & 1 == 1 {
                rows_left[a] -= 1;
                chosen.push(col * k + a);
            }
        }
        fill_column(k, n, col + 1, l, rows_left, chosen, out);
        for a in 0..k {
            if subset >> a & 1 == 1 {
                rows_left[a] += 1;
            }
        }
        chosen.truncate(before);
    }
}

/// The basis vector `v_d` transported to the polynomial space: `x^d` for
/// `gl_k`, `ε(d)·x^d` for `gl_n`.
pub fn v_d_vector(side: Side, d: &Monomial) -> SparseVector {
    let s = match side {
        Side::RowAlgebra => 1,
        Side::ColumnAlgebra => epsilon_sign(d),
    };
    SparseVector::term(d.clone(), qi(s as i64))
}

/// `v_d` built literally: the tensor product of the highest weight vectors
/// `x_1⋯x_r` of each factor, moved into place by `e_{a_1 1}⋯e_{a_r r}`.
pub fn v_d_from_generators(side: Side, d: &Monomial) -> Result<SparseVector> {
    let (k, n) = d.shape();
    let f = side.factors(k, n);
    let occupied: Vec<Vec<usize>> = (0..f)
        .map(|j| {
            (0..side.rank(k, n))
                .filter(|&p| d.contains(side.position(k, j, p)))
                .collect()
        })
        .collect();
    // tensor product of highest weight vectors: factor j holds x_1⋯x_{r_j}
    let mut start = Monomial::one(k, n);
    for (j, occ) in occupied.iter().enumerate() {
        for p in 0..occ.len() {
            start = start.with(side.position(k, j, p), true);
        }
    }
    let sign = match side {
        Side::RowAlgebra => 1,
        Side::ColumnAlgebra => epsilon_sign(&start),
    };
    let mut v = SparseVector::term(start, qi(sign as i64));
    for (j, occ) in occupied.iter().enumerate() {
        // e_{a_1 1} e_{a_2 2} ⋯ e_{a_r r}: the rightmost factor acts first
        for (p, &a) in occ.iter().enumerate().rev() {
            v = act_generator(side, j, (a, p), &v)?;
        }
    }
    Ok(v)
}

/// `(l, l + 2ρ) = Σ_a l_a (l_a + rank + 1 − 2a)`.
pub fn casimir_eigenvalue(l: &PartitionLabel, rank: usize) -> Result<Q> {
    let parts = l.padded(rank)?;
    let total: i64 = parts
        .iter()
        .enumerate()
        .map(|(a, &la)| {
            let la = la as i64;
            la * (la + rank as i64 + 1 - 2 * (a as i64 + 1))
        })
        .sum();
    Ok(qi(total))
}

/// Weyl dimension `∏_{a<b} (l_a − l_b + b − a)/(b − a)` of `V_l` for `gl_rank`.
pub fn weyl_dimension(l: &PartitionLabel, rank: usize) -> Result<usize> {
    let parts = l.padded(rank)?;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for a in 0..rank {
        for b in a + 1..rank {
            num *= (parts[a] - parts[b] + b - a) as u128;
            den *= (b - a) as u128;
        }
    }
    Ok((num / den) as usize)
}

/// One summand `V_l ⊗ V_{l'}` of the joint decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoweSummand {
    pub label: PartitionLabel,
    pub dual: PartitionLabel,
    pub dim_k: usize,
    pub dim_n: usize,
    /// The decomposition is multiplicity-free: always true here.
    pub multiplicity_free: bool,
}

/// Partitions with at most `k` parts and `l_1 ≤ n`, in lexicographic order of
/// the padded part vectors, paired with their transposes.
pub fn howe_summands(k: usize, n: usize) -> Vec<HoweSummand> {
    let mut labels = Vec::new();
    let mut cur = Vec::with_capacity(k);
    partitions_in_box(k, n, n, &mut cur, &mut labels);
    labels.sort();
    labels
        .into_iter()
        .map(|parts| {
            let label = PartitionLabel::new(parts).expect("generated partitions are sorted");
            let dual = label.transpose();
            HoweSummand {
                dim_k: weyl_dimension(&label, k).expect("fits k rows"),
                dim_n: weyl_dimension(&dual, n).expect("fits n rows"),
                label,
                dual,
                multiplicity_free: true,
            }
        })
        .collect()
}

fn partitions_in_box(rows: usize, n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == rows {
        out.push(cur.clone());
        return;
    }
    for p in 0..=max.min(n) {
        cur.push(p);
        partitions_in_box(rows, n, p, cur, out);
        cur.pop();
    }
}

/// Every monomial of every weight block, grouped by joint weight, blocks in
/// increasing order of `(m, l)`.
pub fn weight_blocks(k: usize, n: usize) -> Vec<(WeightPair, Vec<Monomial>)> {
    let mut map: std::collections::BTreeMap<(Vec<usize>, Vec<usize>), Vec<Monomial>> = Default::default();
    for b in 0..1u64 << (k * n) {
        let d = Monomial::from_bits(k, n, b);
        map.entry((d.row_sums(), d.col_sums())).or_default().push(d);
    }
    map.into_iter()
        .map(|((m, l), ms)| (WeightPair { l, m }, ms))
        .collect()
}

/// Outcome of [`highest_weight_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HighestWeight {
    pub is_highest: bool,
    /// `None` when the vector is not a weight vector.
    pub weight: Option<Vec<i64>>,
}

/// `e_pq` under the diagonal action, applied to a vector.
pub fn act_diagonal(side: Side, gen: (usize, usize), v: &SparseVector) -> Result<SparseVector> {
    let (k, n) = v.shape();
    let mut out = SparseVector::zero(k, n);
    for f in 0..side.factors(k, n) {
        out = out.add(&act_generator(side, f, gen, v)?)?;
    }
    Ok(out)
}

/// Tests whether `v` is a weight vector killed by every `e_{c,c+1}`.
pub fn highest_weight_check(side: Side, v: &SparseVector) -> Result<HighestWeight> {
    if v.is_zero() {
        return Err(Error::Argument("highest weight check on the zero vector".into()));
    }
    let (k, n) = v.shape();
    let r = side.rank(k, n);
    let mut weight = Vec::with_capacity(r);
    let (lead, lead_c) = v.terms().next().expect("nonzero vector has a term");
    for a in 0..r {
        let hv = act_diagonal(side, (a, a), v)?;
        let w = hv.coeff(lead) / lead_c;
        if hv != v.scale(&w) || !w.is_integer() {
            return Ok(HighestWeight {
                is_highest: false,
                weight: None,
            });
        }
        weight.push(w.to_integer().try_into().expect("weights are small"));
    }
    for c in 0..r.saturating_sub(1) {
        if !act_diagonal(side, (c, c + 1), v)?.is_zero() {
            return Ok(HighestWeight {
                is_highest: false,
                weight: Some(weight),
            });
        }
    }
    Ok(HighestWeight {
        is_highest: true,
        weight: Some(weight),
    })
}

/// Generator matrices of both actions on the full space `𝔓_kn`.
///
/// Built once per `(k, n)`; all operator constructors read from it.
pub struct FermionSpace {
    k: usize,
    n: usize,
    basis: Arc<Basis>,
    row: GenTable,
    col: GenTable,
    pairs: Mutex<HashMap<(Side, usize, usize), Arc<Vec<PairBlock>>>>,
}

/// Projector onto `V_{l(m)}` inside `V_{m1} ⊗ V_{m2}` for a pair of tensor
/// factors, extended by zero to the whole space.
#[derive(Clone, Debug)]
pub struct PairBlock {
    pub m1: usize,
    pub m2: usize,
    pub m: usize,
    pub projector: MatrixOperator<Q>,
}

struct GenTable {
    rank: usize,
    /// `local[factor][p * rank + q]`
    local: Vec<Vec<MatrixOperator<Q>>>,
    /// diagonal (coproduct) action, `diag[p * rank + q]`
    diag: Vec<MatrixOperator<Q>>,
    casimir: MatrixOperator<Q>,
}

impl FermionSpace {
    /// Limited to `k·n ≤ 16`.
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if k == 0 || n == 0 || k * n > 16 {
            return Err(Error::Argument(format!("shape {k}x{n} outside 1 <= k*n <= 16")));
        }
        let basis = Arc::new(Basis::full(k, n));
        let row = GenTable::build(Side::RowAlgebra, k, n, &basis);
        let col = GenTable::build(Side::ColumnAlgebra, k, n, &basis);
        Ok(FermionSpace {
            k,
            n,
            basis,
            row,
            col,
            pairs: Mutex::new(HashMap::new()),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &Arc<Basis> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn table(&self, side: Side) -> &GenTable {
        match side {
            Side::RowAlgebra => &self.row,
            Side::ColumnAlgebra => &self.col,
        }
    }

    pub fn rank(&self, side: Side) -> usize {
        side.rank(self.k, self.n)
    }

    pub fn factors(&self, side: Side) -> usize {
        side.factors(self.k, self.n)
    }

    /// `(e_pq)_(factor)` as a matrix (0-based indices).
    pub fn generator(&self, side: Side, factor: usize, p: usize, q: usize) -> Result<&MatrixOperator<Q>> {
        check_gen(side, self.k, self.n, factor, p, q)?;
        let t = self.table(side);
        Ok(&t.local[factor][p * t.rank + q])
    }

    /// `e_pq` under the diagonal action on all factors.
    pub fn diagonal(&self, side: Side, p: usize, q: usize) -> Result<&MatrixOperator<Q>> {
        check_gen(side, self.k, self.n, 0, p, q)?;
        let t = self.table(side);
        Ok(&t.diag[p * t.rank + q])
    }

    /// `I = Σ_ab e_ab e_ba` under the diagonal action.
    pub fn casimir(&self, side: Side) -> &MatrixOperator<Q> {
        &self.table(side).casimir
    }

    pub fn identity(&self) -> MatrixOperator<Q> {
        MatrixOperator::identity(self.basis.clone())
    }

    /// Casimir matrix on an invariant sub-basis.
    pub fn casimir_matrix(&self, side: Side, basis: &Arc<Basis>) -> Result<MatrixOperator<Q>> {
        self.casimir(side).restrict(basis.clone())
    }

    /// Number of occupied variables in tensor factor `factor`.
    pub fn factor_degree(&self, side: Side, factor: usize, d: &Monomial) -> usize {
        (0..self.rank(side))
            .filter(|&p| d.contains(side.position(self.k, factor, p)))
            .count()
    }

    /// `Σ_ab (e_ab)_(i,j) (e_ba)_(i,j)` with `e_(i,j) = e_(i) + e_(j)`.
    pub fn pair_casimir(&self, side: Side, i: usize, j: usize) -> Result<MatrixOperator<Q>> {
        let r = self.rank(side);
        let mut out = MatrixOperator::zero(self.basis.clone());
        for a in 0..r {
            for b in 0..r {
                let ab = self.generator(side, i, a, b)?.add(self.generator(side, j, a, b)?);
                let ba = self.generator(side, i, b, a)?.add(self.generator(side, j, b, a)?);
                out = out.add(&ab.mul(&ba));
            }
        }
        Ok(out)
    }

    /// Isotypic projectors of the factor pair `(i, j)`, one per
    /// `(m1, m2, m)` with `m1`, `m2` the degrees of factors `i` and `j`.
    /// Computed on first use and kept for the lifetime of the space.
    pub fn pair_blocks(&self, side: Side, i: usize, j: usize) -> Result<Arc<Vec<PairBlock>>> {
        let f = self.factors(side);
        if i >= f || j >= f || i == j {
            return Err(Error::Argument(format!("factor pair ({},{}) invalid", i + 1, j + 1)));
        }
        if let Some(hit) = self.pairs.lock().expect("cache lock").get(&(side, i, j)) {
            return Ok(hit.clone());
        }
        let r = self.rank(side);
        let casimir = self.pair_casimir(side, i, j)?;
        let mut blocks = Vec::new();
        for m1 in 0..=r {
            for m2 in 0..=r {
                let members: Vec<Monomial> = self
                    .basis
                    .monomials()
                    .iter()
                    .filter(|d| self.factor_degree(side, i, d) == m1 && self.factor_degree(side, j, d) == m2)
                    .cloned()
                    .collect();
                let sub = Arc::new(Basis::new(self.k, self.n, members)?);
                let local = casimir.restrict(sub)?;
                let ms: Vec<usize> = ((m1 + m2).saturating_sub(r)..=m1.min(m2)).collect();
                let spectrum = ms
                    .iter()
                    .map(|&m| casimir_eigenvalue(&PartitionLabel::two_column(m1, m2, m), r))
                    .collect::<Result<Vec<Q>>>()?;
                for (m, p) in ms.into_iter().zip(eigenprojectors(&local, &spectrum)?) {
                    blocks.push(PairBlock {
                        m1,
                        m2,
                        m,
                        projector: p.embed(self.basis.clone())?,
                    });
                }
            }
        }
        let blocks = Arc::new(blocks);
        self.pairs
            .lock()
            .expect("cache lock")
            .insert((side, i, j), blocks.clone());
        Ok(blocks)
    }
}

impl GenTable {
    fn build(side: Side, k: usize, n: usize, basis: &Arc<Basis>) -> Self {
        let rank = side.rank(k, n);
        let factors = side.factors(k, n);
        let local: Vec<Vec<MatrixOperator<Q>>> = (0..factors)
            .map(|f| {
                (0..rank * rank)
                    .map(|pq| {
                        let (p, q) = (pq / rank, pq % rank);
                        x_d_matrix(basis, side.position(k, f, p), side.position(k, f, q))
                    })
                    .collect()
            })
            .collect();
        let diag: Vec<MatrixOperator<Q>> = (0..rank * rank)
            .map(|pq| {
                local
                    .iter()
                    .fold(MatrixOperator::zero(basis.clone()), |acc, l| acc.add(&l[pq]))
            })
            .collect();
        let casimir = (0..rank * rank).fold(MatrixOperator::zero(basis.clone()), |acc, pq| {
            let (a, b) = (pq / rank, pq % rank);
            acc.add(&diag[a * rank + b].mul(&diag[b * rank + a]))
        });
        GenTable {
            rank,
            local,
            diag,
            casimir,
        }
    }
}

/// Matrix of `x_p ∂_q` on the full basis (where index equals bit pattern).
fn x_d_matrix(basis: &Arc<Basis>, p: usize, q: usize) -> MatrixOperator<Q> {
    let triplets = (0..basis.len()).filter_map(|j| {
        x_d_bits(j as u64, p, q).map(|(img, s)| (img as usize, j, if s > 0 { Q::one() } else { -Q::one() }))
    });
    MatrixOperator::from_triplets(basis.clone(), triplets)
}

/// The highest weight vector `v_m` of `V_{l(m)} ⊂ V_{m1} ⊗ V_{m2} ⊂ 𝔓_{2,n}`:
///
/// `v_m = ∏_{i≤m} x[1,i] x[2,i] · Σ_ε x[ε_1,m+1] ⋯ x[ε_r,m+r]`,
///
/// `r = m1 + m2 − 2m`, summed over `ε ∈ {1,2}^r` with `m1 − m` ones.
pub fn v_m_vector(n: usize, m1: usize, m2: usize, m: usize) -> Result<SparseVector> {
    if m1 > n || m2 > n || m > m1.min(m2) || m1 + m2 > n + m {
        return Err(Error::Argument(format!(
            "v_m needs max(0, m1+m2-n) <= m <= min(m1,m2); got n={n}, m1={m1}, m2={m2}, m={m}"
        )));
    }
    let r = m1 + m2 - 2 * m;
    let mut out = SparseVector::zero(2, n);
    for eps in 0u32..1 << r {
        // bit s set means ε_{s+1} = 2
        if eps.count_ones() as usize != m2 - m {
            continue;
        }
        let mut order: Vec<usize> = Vec::with_capacity(2 * m + r);
        for i in 0..m {
            order.push(2 * i);
            order.push(2 * i + 1);
        }
        for s in 0..r {
            let a = (eps >> s & 1) as usize;
            order.push(2 * (m + s) + a);
        }
        let sign = crate::exterior::reorder_sign(&order)?;
        let d = Monomial::from_positions(2, n, &order)?;
        out.add_term(d, qi(sign as i64));
    }
    Ok(out)
}

/// `true` if the matrix only links monomials of equal joint weight.
pub fn preserves_weights(m: &MatrixOperator<Q>) -> bool {
    let basis = m.basis();
    (0..m.dim()).all(|i| {
        m.row(i)
            .iter()
            .all(|(j, _)| WeightPair::of(basis.get(i)) == WeightPair::of(basis.get(*j)))
    })
}
