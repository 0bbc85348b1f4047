//! Rational R-matrices on `V_{m1} ⊗ V_{m2} ⊂ 𝔓_{2,n}` and on factor pairs of
//! `𝔓_kn`, plus the scalars `ρ_m`, `α_m`, `β_m`.

use std::sync::Arc;

use num::{One, Zero};

use super::{lift_scaled, nonzero};
use crate::error::{Error, Result};
use crate::exactalg::{eigenprojectors, kernel, qi, MatrixOperator, Scalar, Q};
use crate::exterior::{scalar_product, Basis, Monomial, SparseVector};
use crate::representation::{act_generator, casimir_eigenvalue, v_m_vector, FermionSpace, PartitionLabel, Side};

/// `ρ_m(t) = ∏_{s=0}^{m−1} (t + m1 − s) / (t − m2 + s)`.
pub fn rho_eigenvalue<T: Scalar>(m1: usize, m2: usize, m: usize, t: &T) -> Result<T> {
    let mut acc = T::one();
    for s in 0..m as i64 {
        let num = t.clone() + T::from_int(m1 as i64 - s);
        let den = nonzero(t.clone() - T::from_int(m2 as i64 - s), || {
            format!("rho pole: t = {} for (m1,m2,m)=({m1},{m2},{m})", m2 as i64 - s)
        })?;
        acc = acc * num / den;
    }
    Ok(acc)
}

/// `R_ij(t) = Σ ρ_m(t) Π_m` over the isotypic projectors of the factor pair,
/// with `m1`, `m2` the degrees of factors `i` and `j`.
pub fn r_matrix_full<T: Scalar>(space: &FermionSpace, side: Side, i: usize, j: usize, t: &T) -> Result<MatrixOperator<T>> {
    let blocks = space.pair_blocks(side, i, j)?;
    let mut out = MatrixOperator::zero(space.basis().clone());
    for b in blocks.iter() {
        let rho = rho_eigenvalue(b.m1, b.m2, b.m, t)?;
        out = out.add(&lift_scaled(&b.projector, &rho));
    }
    Ok(out)
}

fn m_range(n: usize, m1: usize, m2: usize) -> std::ops::RangeInclusive<usize> {
    (m1 + m2).saturating_sub(n)..=m1.min(m2)
}

fn check_block(n: usize, m1: usize, m2: usize) -> Result<()> {
    if n == 0 || 2 * n > 16 || m1 > n || m2 > n {
        return Err(Error::Argument(format!("block V_{m1} x V_{m2} needs 1 <= n <= 8 and m1, m2 <= n (n={n})")));
    }
    Ok(())
}

/// Monomials of `𝔓_{2,n}` with row sums `(m1, m2)` and the per-row `gl_n`
/// generators on them, `local[row][p * n + q]`.
fn block_action(n: usize, m1: usize, m2: usize) -> Result<(Arc<Basis>, Vec<Vec<MatrixOperator<Q>>>)> {
    check_block(n, m1, m2)?;
    let members: Vec<Monomial> = (0u64..1 << (2 * n))
        .map(|b| Monomial::from_bits(2, n, b))
        .filter(|d| d.row_sums() == [m1, m2])
        .collect();
    let basis = Arc::new(Basis::new(2, n, members)?);
    let mut local = vec![Vec::with_capacity(n * n); 2];
    for (row, gens) in local.iter_mut().enumerate() {
        for p in 0..n {
            for q in 0..n {
                let mut trip = Vec::new();
                for (c, d) in basis.monomials().iter().enumerate() {
                    let img = act_generator(Side::ColumnAlgebra, row, (p, q), &SparseVector::monomial(d.clone()))?;
                    for (m, x) in img.terms() {
                        let r = basis
                            .index_of(m)
                            .ok_or_else(|| Error::Integrity(format!("{m} left the block")))?;
                        trip.push((r, c, x.clone()));
                    }
                }
                gens.push(MatrixOperator::from_triplets(basis.clone(), trip));
            }
        }
    }
    Ok((basis, local))
}

/// `R(t) = Σ_m ρ_m(t) Π_m` on `V_{m1} ⊗ V_{m2} ⊂ 𝔓_{2,n}`, with `Π_m` the
/// Casimir eigenprojectors onto `V_{l(m)}`.
pub fn r_matrix_spectral(n: usize, m1: usize, m2: usize, t: &Q) -> Result<MatrixOperator<Q>> {
    let (basis, local) = block_action(n, m1, m2)?;
    let mut casimir = MatrixOperator::zero(basis.clone());
    for a in 0..n {
        for b in 0..n {
            let ab = local[0][a * n + b].add(&local[1][a * n + b]);
            let ba = local[0][b * n + a].add(&local[1][b * n + a]);
            casimir = casimir.add(&ab.mul(&ba));
        }
    }
    let ms: Vec<usize> = m_range(n, m1, m2).collect();
    let spectrum = ms
        .iter()
        .map(|&m| casimir_eigenvalue(&PartitionLabel::two_column(m1, m2, m), n))
        .collect::<Result<Vec<Q>>>()?;
    for (i, c) in spectrum.iter().enumerate() {
        if spectrum[i + 1..].contains(c) {
            return Err(Error::Integrity(format!("Casimir eigenvalue {c} repeats for V_{m1} x V_{m2}, n={n}")));
        }
    }
    let projectors = eigenprojectors(&casimir, &spectrum)?;
    let mut out = MatrixOperator::zero(basis);
    for (m, p) in ms.into_iter().zip(projectors) {
        out = out.add(&p.scale(&rho_eigenvalue(m1, m2, m, t)?));
    }
    Ok(out)
}

/// How the one-dimensional solution space of [`r_matrix_solve`] is scaled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// `R(v ⊗ w) = v ⊗ w` for the highest vectors `v`, `w`.
    HighestVectors,
    /// `R(v ⊗ w) = ρ_{min(m1,m2)}(t) (v ⊗ w)`, i.e. `ρ_0 = 1`.
    Spectral,
}

/// Solves invariance and the commutation relation
/// `R (t e_ab ⊗ 1 + Σ_c e_ac ⊗ e_cb) = (t e_ab ⊗ 1 + Σ_c e_cb ⊗ e_ac) R`
/// as an exact linear system in the entries of `R`.
pub fn r_matrix_solve(n: usize, m1: usize, m2: usize, t: &Q, norm: Normalization) -> Result<MatrixOperator<Q>> {
    let (basis, local) = block_action(n, m1, m2)?;
    let dim = basis.len();
    let g = |row: usize, a: usize, b: usize| &local[row][a * n + b];
    // pairs (X, Y) with R X − Y R = 0
    let mut pairs: Vec<(Vec<Vec<Q>>, Vec<Vec<Q>>)> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let diag = g(0, a, b).add(g(1, a, b)).to_dense();
            pairs.push((diag.clone(), diag));
            let mut lhs = g(0, a, b).scale(t);
            let mut rhs = lhs.clone();
            for c in 0..n {
                lhs = lhs.add(&g(0, a, c).mul(g(1, c, b)));
                rhs = rhs.add(&g(0, c, b).mul(g(1, a, c)));
            }
            pairs.push((lhs.to_dense(), rhs.to_dense()));
        }
    }
    let unknown = |i: usize, l: usize| i * dim + l;
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for (x, y) in &pairs {
        for i in 0..dim {
            for j in 0..dim {
                let mut eq = vec![Q::zero(); dim * dim];
                for l in 0..dim {
                    eq[unknown(i, l)] += &x[l][j];
                    eq[unknown(l, j)] -= &y[i][l];
                }
                if eq.iter().any(|c| !c.is_zero()) {
                    rows.push(eq);
                }
            }
        }
    }
    let sol = if rows.is_empty() {
        (0..dim * dim)
            .map(|u| {
                let mut e = vec![Q::zero(); dim * dim];
                e[u] = Q::one();
                e
            })
            .collect()
    } else {
        kernel(&rows)
    };
    if sol.len() != 1 {
        return Err(Error::Uniqueness(sol.len()));
    }
    let raw = MatrixOperator::from_triplets(
        basis.clone(),
        (0..dim).flat_map(|i| (0..dim).map(move |l| (i, l))).map(|(i, l)| (i, l, sol[0][unknown(i, l)].clone())),
    );
    let hw: Vec<usize> = (0..m1).map(|i| 2 * i).chain((0..m2).map(|i| 2 * i + 1)).collect();
    let idx = basis
        .index_of(&Monomial::from_positions(2, n, &hw)?)
        .ok_or_else(|| Error::Integrity("highest vector missing from block".into()))?;
    let c = raw.get(idx, idx);
    if c.is_zero() {
        return Err(Error::Genericity(format!("R vanishes on the highest vector at t = {t}")));
    }
    let target = match norm {
        Normalization::HighestVectors => Q::one(),
        Normalization::Spectral => rho_eigenvalue(m1, m2, m1.min(m2), t)?,
    };
    Ok(raw.scale(&(target / c)))
}

/// Which evaluation [`alpha_beta`] uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlphaBetaMethod {
    /// `⟨L v_m, v_{m−1}⟩` and `⟨M v_m, v_{m−1}⟩` from the exterior action.
    BruteForce,
    /// The binomial closed forms.
    Closed,
}

fn binomial(n: i64, r: i64) -> Q {
    if n < 0 || r < 0 || r > n {
        return Q::zero();
    }
    let mut acc = Q::one();
    for i in 0..r {
        acc = acc * qi(n - i) / qi(i + 1);
    }
    acc
}

/// `(α_m(t), β_m(t))` with `α_m = ⟨L_{m1+m2−m+1, m}(t) v_m, v_{m−1}⟩`,
/// `β_m = ⟨M_{m1+m2−m+1, m}(t) v_m, v_{m−1}⟩`,
/// `L_ij(t) = t (e_ij)_(1) + Σ_c (e_ic)_(1) (e_cj)_(2)`,
/// `M_ij(t) = t (e_ij)_(1) + Σ_c (e_cj)_(1) (e_ic)_(2)`.
pub fn alpha_beta(n: usize, m1: usize, m2: usize, m: usize, t: &Q, method: AlphaBetaMethod) -> Result<(Q, Q)> {
    if m == 0 || m > m1.min(m2) || m1 + m2 - m + 1 > n {
        return Err(Error::Argument(format!(
            "alpha/beta need 1 <= m <= min(m1,m2) and m1+m2-m+1 <= n; got n={n}, ({m1},{m2},{m})"
        )));
    }
    match method {
        AlphaBetaMethod::Closed => {
            let nn = (m1 + m2 - 2 * m) as i64;
            let sign = if (m1 + m2 + m) % 2 == 0 { Q::one() } else { -Q::one() };
            let c = binomial(nn, (m1 - m) as i64);
            let alpha = (t + qi(1)) * &c + qi(nn) * binomial(nn - 1, (m2 - m) as i64);
            let beta = (t - qi(1)) * &c - qi(nn) * binomial(nn - 1, (m1 - m) as i64);
            Ok((sign.clone() * alpha, sign * beta))
        }
        AlphaBetaMethod::BruteForce => {
            let vm = v_m_vector(n, m1, m2, m)?;
            let vprev = v_m_vector(n, m1, m2, m - 1)?;
            let (i, j) = (m1 + m2 - m, m - 1);
            let act = |f: usize, g: (usize, usize), v: &SparseVector| act_generator(Side::ColumnAlgebra, f, g, v);
            let first = act(0, (i, j), &vm)?.scale(t);
            let mut l = first.clone();
            let mut mm = first;
            for c in 0..n {
                l = l.add(&act(0, (i, c), &act(1, (c, j), &vm)?)?)?;
                mm = mm.add(&act(0, (c, j), &act(1, (i, c), &vm)?)?)?;
            }
            Ok((scalar_product(&l, &vprev)?, scalar_product(&mm, &vprev)?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;
    use crate::representation::preserves_weights;

    #[test]
    fn rho_values() {
        let t = q(7, 2);
        assert_eq!(rho_eigenvalue(2, 3, 0, &t).unwrap(), Q::one());
        assert_eq!(rho_eigenvalue(1, 1, 1, &t).unwrap(), (&t + qi(1)) / (&t - qi(1)));
        for (m1, m2) in [(1, 1), (2, 1), (2, 3), (3, 3)] {
            for m in 1..=m1.min(m2) {
                let ratio = rho_eigenvalue(m1, m2, m, &t).unwrap() / rho_eigenvalue(m1, m2, m - 1, &t).unwrap();
                let expect = (&t + qi(1 + m1 as i64 - m as i64)) / (&t - qi(1) + qi(m as i64 - m2 as i64));
                assert_eq!(ratio, expect);
            }
        }
        assert!(rho_eigenvalue(1, 1, 1, &qi(1)).is_err());
    }

    #[test]
    fn spectral_r_on_two_vectors() {
        let t = qi(3);
        let r = r_matrix_spectral(2, 1, 1, &t).unwrap();
        assert_eq!(r.dim(), 4);
        // l(0) = (1,1) is one-dimensional with ρ0 = 1, l(1) = (2) three-dimensional with ρ1 = 2
        let id = MatrixOperator::<Q>::identity(r.basis().clone());
        let p0 = r.sub(&id.scale(&qi(2))).scale(&qi(-1));
        let p1 = r.sub(&id);
        assert_eq!(p0.rank(), 1);
        assert_eq!(p1.rank(), 3);
        assert!(r.sub(&id).mul(&r.sub(&id.scale(&qi(2)))).is_zero());
    }

    #[test]
    fn spectral_r_trivial_factor() {
        let r = r_matrix_spectral(3, 0, 2, &q(5, 7)).unwrap();
        assert_eq!(r, MatrixOperator::identity(r.basis().clone()));
    }

    #[test]
    fn spectral_r_on_highest_vectors() {
        let t = q(-13, 4);
        for n in 1..=4 {
            for m1 in 0..=n {
                for m2 in 0..=n {
                    let r = r_matrix_spectral(n, m1, m2, &t).unwrap();
                    for m in m_range(n, m1, m2) {
                        let v = v_m_vector(n, m1, m2, m).unwrap();
                        let rho = rho_eigenvalue(m1, m2, m, &t).unwrap();
                        let coords = r.basis().coordinates(&v).unwrap();
                        let img = MatrixOperator::from_triplets(r.basis().clone(), vec![]).add(&r);
                        let out: Vec<Q> = (0..img.dim())
                            .map(|i| img.row(i).iter().map(|(j, x)| x * &coords[*j]).sum())
                            .collect();
                        let expect: Vec<Q> = coords.iter().map(|c| c * &rho).collect();
                        assert_eq!(out, expect, "n={n} ({m1},{m2},{m})");
                    }
                }
            }
        }
    }

    #[test]
    fn solve_matches_spectral() {
        for (t, n) in [(q(5, 2), 2), (q(-7, 3), 3), (q(11, 6), 3)] {
            for m1 in 0..=n {
                for m2 in 0..=n {
                    let a = r_matrix_spectral(n, m1, m2, &t).unwrap();
                    let b = r_matrix_solve(n, m1, m2, &t, Normalization::Spectral).unwrap();
                    assert_eq!(a, b, "n={n} m1={m1} m2={m2}");
                    let lit = r_matrix_solve(n, m1, m2, &t, Normalization::HighestVectors).unwrap();
                    let rho = rho_eigenvalue(m1, m2, m1.min(m2), &t).unwrap();
                    assert_eq!(lit.scale(&rho), b);
                }
            }
        }
    }

    #[test]
    fn literal_normalization_is_one_on_full_rows() {
        let t = q(4, 9);
        for n in 1..=3 {
            let lit = r_matrix_solve(n, n, n, &t, Normalization::HighestVectors).unwrap();
            assert_eq!(lit.dim(), 1);
            assert_eq!(lit, MatrixOperator::identity(lit.basis().clone()));
        }
    }

    #[test]
    fn full_r_commutes_with_diagonal_action() {
        let space = FermionSpace::new(2, 3).unwrap();
        let t = q(17, 5);
        for side in [Side::RowAlgebra, Side::ColumnAlgebra] {
            let f = space.factors(side);
            let r = space.rank(side);
            for i in 0..f {
                for j in i + 1..f {
                    let rm = r_matrix_full(&space, side, i, j, &t).unwrap();
                    assert!(preserves_weights(&rm));
                    for a in 0..r {
                        for b in 0..r {
                            assert!(rm.commutator(space.diagonal(side, a, b).unwrap()).is_zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn full_r_restricts_to_spectral() {
        // gl_n on 𝔓_{2,n}: the two rows are the factors
        for n in 1..=3 {
            let space = FermionSpace::new(2, n).unwrap();
            let t = q(-9, 7);
            let full = r_matrix_full(&space, Side::ColumnAlgebra, 0, 1, &t).unwrap();
            for m1 in 0..=n {
                for m2 in 0..=n {
                    let spec = r_matrix_spectral(n, m1, m2, &t).unwrap();
                    assert_eq!(full.restrict(spec.basis().clone()).unwrap(), spec);
                }
            }
        }
    }

    #[test]
    fn alpha_beta_single_box() {
        let t = q(3, 5);
        let (a, b) = alpha_beta(2, 1, 1, 1, &t, AlphaBetaMethod::Closed).unwrap();
        assert_eq!(a, -(&t + qi(1)));
        assert_eq!(b, -(&t - qi(1)));
        assert!(alpha_beta(2, 1, 1, 0, &t, AlphaBetaMethod::Closed).is_err());
        assert!(alpha_beta(2, 2, 1, 1, &t, AlphaBetaMethod::Closed).is_err());
    }

    /// Brute force equals the closed form times `(−1)^{m−1}`: the printed
    /// sign prefactor disagrees with the exterior conventions for even `m`.
    #[test]
    fn alpha_beta_brute_force_vs_closed() {
        for t in [q(3, 5), q(-17, 4), q(41, 9)] {
            for n in 1..=6usize {
                for m1 in 1..=3.min(n) {
                    for m2 in 1..=3.min(n) {
                        for m in 1..=m1.min(m2) {
                            if m1 + m2 - m + 1 > n {
                                continue;
                            }
                            let bf = alpha_beta(n, m1, m2, m, &t, AlphaBetaMethod::BruteForce).unwrap();
                            let cf = alpha_beta(n, m1, m2, m, &t, AlphaBetaMethod::Closed).unwrap();
                            let s = if m % 2 == 1 { qi(1) } else { qi(-1) };
                            assert_eq!(bf, (&cf.0 * &s, &cf.1 * &s), "n={n} ({m1},{m2},{m})");
                            let ratio = &bf.0 / &bf.1;
                            let expect = (&t + qi(1 + m1 as i64 - m as i64)) / (&t - qi(1) + qi(m as i64 - m2 as i64));
                            assert_eq!(ratio, expect);
                            assert_eq!(&cf.0 / &cf.1, expect);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn alpha_by_hand_for_two_full_columns() {
        // v_2 = x11 x21 x12 x22; the t-term sends it to −x11 x21 x22 x13 in v_1
        let t = q(2, 7);
        let (a, _) = alpha_beta(3, 2, 2, 2, &t, AlphaBetaMethod::BruteForce).unwrap();
        assert_eq!(a, -(&t + qi(1)));
        let (c, _) = alpha_beta(3, 2, 2, 2, &t, AlphaBetaMethod::Closed).unwrap();
        assert_eq!(c, &t + qi(1));
    }
}
