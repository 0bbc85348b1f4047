//! Structural statements: the joint decomposition, adjointness,
//! orthogonality, the vectors `v_m`, the scalars `α_m`/`β_m`, the two
//! R-matrix constructions, the restriction of `B₁₂`, the value relation and
//! the Casimir identity on `𝔓_{2,n}`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::Zero;
use rand_chacha::ChaCha8Rng;

use super::{compare_matrices, sample_generic_t, Case, IdentityId, Tally, Verifier};
use crate::error::{Error, Result};
use crate::exactalg::{eigenprojectors, kernel, qi, MatrixOperator, Q};
use crate::exterior::{scalar_product, Basis, Monomial};
use crate::operators::{
    alpha_beta, b_operator, c_factor, r_matrix_solve, r_matrix_spectral, rho_eigenvalue, AlphaBetaMethod,
    Normalization,
};
use crate::representation::{
    casimir_eigenvalue, highest_weight_check, howe_summands, v_m_vector, weight_blocks, FermionSpace, PartitionLabel,
    Side,
};

/// Random spectral parameters per `(m1, m2)` for the t-dependent checks.
pub const T_POINTS: usize = 3;

pub(super) fn run(v: &Verifier, case: &Case, rng: &mut ChaCha8Rng, tally: &mut Tally) -> Result<()> {
    let (k, n) = (case.k, case.n);
    if case.id.needs_two_rows() && k != 2 {
        return Err(Error::Argument(format!("{} lives on P_2n, got k = {k}", case.id)));
    }
    match case.id {
        IdentityId::Howe => howe(&*v.space(k, n)?, tally),
        IdentityId::Adjoint => adjoint(&*v.space(k, n)?, tally),
        IdentityId::Ortho => ortho(&*v.space(k, n)?, tally),
        IdentityId::VmHw => vm_highest(n, tally),
        IdentityId::VmNorm => vm_norm(n, tally),
        IdentityId::AlphaBeta => alpha_beta_check(n, rng, tally),
        IdentityId::RCross => r_cross(n, rng, tally),
        IdentityId::BRestrict => b_restrict(&*v.space(k, n)?, rng, tally),
        IdentityId::ValueRel => value_rel(&*v.space(k, n)?, rng, tally),
        IdentityId::Casimir => casimir(&*v.space(k, n)?, tally),
        other => Err(Error::Argument(format!("{other} is not a structure identity"))),
    }
}

fn sub_basis(space: &FermionSpace, monomials: Vec<Monomial>) -> Result<Arc<Basis>> {
    Ok(Arc::new(Basis::new(space.k(), space.n(), monomials)?))
}

fn distinct(mut xs: Vec<Q>) -> Vec<Q> {
    xs.sort();
    xs.dedup();
    xs
}

/// `Σ dim V_l ⊗ V_l' = 2^{kn}`, the same total from exact isotypic projector
/// ranks, and a one-dimensional space of joint highest vectors per label.
fn howe(space: &FermionSpace, tally: &mut Tally) -> Result<()> {
    let (k, n) = (space.k(), space.n());
    let summands = howe_summands(k, n);
    let total: usize = summands.iter().map(|s| s.dim_k * s.dim_n).sum();
    tally.require(|| format!("dimension sum {total} = 2^{}", k * n), total == 1 << (k * n));

    // labels sharing degree and both Casimir eigenvalues are counted together
    let mut expected: BTreeMap<(usize, Q, Q), usize> = BTreeMap::new();
    let mut row_spec: BTreeMap<usize, Vec<Q>> = BTreeMap::new();
    let mut col_spec: BTreeMap<usize, Vec<Q>> = BTreeMap::new();
    for s in &summands {
        let deg = s.label.size();
        let ck = casimir_eigenvalue(&s.label, k)?;
        let cn = casimir_eigenvalue(&s.dual, n)?;
        row_spec.entry(deg).or_default().push(ck.clone());
        col_spec.entry(deg).or_default().push(cn.clone());
        *expected.entry((deg, ck, cn)).or_default() += s.dim_k * s.dim_n;
    }
    let mut found: BTreeMap<(usize, Q, Q), usize> = BTreeMap::new();
    for (wp, monos) in weight_blocks(k, n) {
        let deg: usize = wp.m.iter().sum();
        let basis = sub_basis(space, monos)?;
        let rs = distinct(row_spec[&deg].clone());
        let cs = distinct(col_spec[&deg].clone());
        let pk = eigenprojectors(&space.casimir_matrix(Side::RowAlgebra, &basis)?, &rs)?;
        let pn = eigenprojectors(&space.casimir_matrix(Side::ColumnAlgebra, &basis)?, &cs)?;
        for (ck, p) in rs.iter().zip(&pk) {
            for (cn, q) in cs.iter().zip(&pn) {
                let r = p.mul(q).rank();
                if r > 0 {
                    *found.entry((deg, ck.clone(), cn.clone())).or_default() += r;
                }
            }
        }
    }
    tally.require(|| "isotypic projector ranks match Weyl dimensions".into(), found == expected);

    let blocks: BTreeMap<_, _> = weight_blocks(k, n)
        .into_iter()
        .map(|(wp, ms)| ((wp.m, wp.l), ms))
        .collect();
    for s in &summands {
        let key = (s.label.padded(k)?, s.dual.padded(n)?);
        let cols: Vec<usize> = blocks[&key]
            .iter()
            .map(|d| space.basis().index_of(d).expect("full basis"))
            .collect();
        let mut rows: Vec<Vec<Q>> = Vec::new();
        let raising = (0..k.saturating_sub(1))
            .map(|a| space.diagonal(Side::RowAlgebra, a, a + 1))
            .chain((0..n.saturating_sub(1)).map(|i| space.diagonal(Side::ColumnAlgebra, i, i + 1)));
        for e in raising {
            let e = e?;
            for r in 0..e.dim() {
                let row: Vec<Q> = cols.iter().map(|&c| e.get(r, c)).collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        let dim = if rows.is_empty() { cols.len() } else { kernel(&rows).len() };
        tally.require(|| format!("one joint highest vector for {}", s.label), dim == 1);
    }
    Ok(())
}

/// `⟨w₁, e_ij w₂⟩ = ⟨e_ji w₁, w₂⟩` for every local generator on both sides.
fn adjoint(space: &FermionSpace, tally: &mut Tally) -> Result<()> {
    for side in [Side::RowAlgebra, Side::ColumnAlgebra] {
        let r = space.rank(side);
        for f in 0..space.factors(side) {
            for p in 0..r {
                for q in 0..r {
                    let e = space.generator(side, f, p, q)?.transpose();
                    let d = space.generator(side, f, q, p)?;
                    tally.record(
                        || format!("{} e_{}{} in factor {}", side.label(), p + 1, q + 1, f + 1),
                        compare_matrices(&e, d),
                    );
                }
            }
        }
    }
    Ok(())
}

/// Distinct `gl_n` summands of the two-row tensor product are orthogonal.
fn ortho(space: &FermionSpace, tally: &mut Tally) -> Result<()> {
    let blocks = space.pair_blocks(Side::ColumnAlgebra, 0, 1)?;
    let zero = MatrixOperator::zero(space.basis().clone());
    for (x, a) in blocks.iter().enumerate() {
        for b in &blocks[x + 1..] {
            if (a.m1, a.m2) != (b.m1, b.m2) {
                continue;
            }
            let g = a.projector.transpose().mul(&b.projector);
            tally.record(
                || format!("V_l({}) vs V_l({}) in ({},{})", a.m, b.m, a.m1, a.m2),
                compare_matrices(&g, &zero),
            );
        }
    }
    Ok(())
}

fn vm_tuples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..=n).flat_map(move |m1| {
        (0..=n).flat_map(move |m2| ((m1 + m2).saturating_sub(n)..=m1.min(m2)).map(move |m| (m1, m2, m)))
    })
}

fn vm_highest(n: usize, tally: &mut Tally) -> Result<()> {
    for (m1, m2, m) in vm_tuples(n) {
        let v = v_m_vector(n, m1, m2, m)?;
        let hw = highest_weight_check(Side::ColumnAlgebra, &v)?;
        let want: Vec<i64> = PartitionLabel::two_column(m1, m2, m)
            .padded(n)?
            .into_iter()
            .map(|x| x as i64)
            .collect();
        let rows_ok = v.terms().all(|(d, _)| d.row_sums() == vec![m1, m2]);
        tally.require(
            || format!("v_m highest of weight l(m) for n={n} ({m1},{m2},{m})"),
            hw.is_highest && hw.weight.as_ref() == Some(&want) && rows_ok,
        );
    }
    Ok(())
}

fn vm_norm(n: usize, tally: &mut Tally) -> Result<()> {
    for (m1, m2, m) in vm_tuples(n) {
        let v = v_m_vector(n, m1, m2, m)?;
        let norm = scalar_product(&v, &v)?;
        tally.require(|| format!("<v_m, v_m> != 0 for n={n} ({m1},{m2},{m})"), !norm.is_zero());
    }
    Ok(())
}

/// Brute force against the closed forms (literal equality), nonvanishing,
/// and the ratio `α_m/β_m = (t + 1 + m1 − m)/(t − 1 + m − m2)`.
fn alpha_beta_check(n: usize, rng: &mut ChaCha8Rng, tally: &mut Tally) -> Result<()> {
    for _ in 0..T_POINTS {
        let t = sample_generic_t(rng);
        for m1 in 1..=3.min(n) {
            for m2 in 1..=3.min(n) {
                for m in 1..=m1.min(m2) {
                    if m1 + m2 - m + 1 > n {
                        continue;
                    }
                    let bf = alpha_beta(n, m1, m2, m, &t, AlphaBetaMethod::BruteForce)?;
                    let cf = alpha_beta(n, m1, m2, m, &t, AlphaBetaMethod::Closed)?;
                    let tag = || format!("n={n} ({m1},{m2},{m}) t={t}");
                    tally.require(|| format!("alpha, beta nonzero {}", tag()), !bf.0.is_zero() && !bf.1.is_zero());
                    let expect = (&t + qi(1 + m1 as i64 - m as i64)) / (&t - qi(1) + qi(m as i64 - m2 as i64));
                    tally.require(|| format!("alpha/beta ratio {}", tag()), bf.0.clone() / &bf.1 == expect);
                    tally.require(
                        || format!("closed form = brute force {}: ({}, {}) vs ({}, {})", tag(), cf.0, cf.1, bf.0, bf.1),
                        bf == cf,
                    );
                }
            }
        }
        tally.params.push(t);
    }
    Ok(())
}

/// Eigenprojector and linear-system constructions agree; `ρ₁ = (t+1)/(t−1)`
/// on `v_1` for `m1 = m2 = 1`.
fn r_cross(n: usize, rng: &mut ChaCha8Rng, tally: &mut Tally) -> Result<()> {
    for _ in 0..T_POINTS {
        let t = sample_generic_t(rng);
        for m1 in 0..=n {
            for m2 in 0..=n {
                let a = r_matrix_spectral(n, m1, m2, &t)?;
                let b = r_matrix_solve(n, m1, m2, &t, Normalization::Spectral)?;
                tally.record(|| format!("R spectral vs solved n={n} ({m1},{m2}) t={t}"), compare_matrices(&a, &b));
            }
        }
        let rho = rho_eigenvalue(1, 1, 1, &t)?;
        let expect = (&t + qi(1)) / (&t - qi(1));
        let r = r_matrix_spectral(n, 1, 1, &t)?;
        let v1 = v_m_vector(n, 1, 1, 1)?;
        let image = r.apply(&v1)?;
        tally.require(|| format!("rho_1 = (t+1)/(t-1) at t={t}"), rho == expect && image == v1.scale(&expect));
        tally.params.push(t);
    }
    Ok(())
}

/// The `gl_2` isotypic projectors `(m1 + m2 − m, m)` on the row-sum block
/// `(m1, m2)` of `𝔓_{2,n}`, embedded in the full space.
fn row_block_projectors(space: &FermionSpace, m1: usize, m2: usize) -> Result<Vec<(usize, MatrixOperator<Q>)>> {
    let n = space.n();
    let monos: Vec<Monomial> = space
        .basis()
        .monomials()
        .iter()
        .filter(|d| d.row_sums() == [m1, m2])
        .cloned()
        .collect();
    let basis = sub_basis(space, monos)?;
    let ms: Vec<usize> = ((m1 + m2).saturating_sub(n)..=m1.min(m2)).collect();
    let spectrum = ms
        .iter()
        .map(|&m| casimir_eigenvalue(&PartitionLabel::new(vec![m1 + m2 - m, m])?, 2))
        .collect::<Result<Vec<Q>>>()?;
    let local = space.casimir_matrix(Side::RowAlgebra, &basis)?;
    let ps = eigenprojectors(&local, &spectrum)?;
    ms.into_iter()
        .zip(ps)
        .map(|(m, p)| Ok((m, p.embed(space.basis().clone())?)))
        .collect()
}

fn two_row_blocks(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..=n).flat_map(move |m1| (0..=n).map(move |m2| (m1, m2)))
}

/// `B₁₂(t)` acts on the `m`-th summand by `∏_{s=m}^{m2−1} (t+m2−s)/(t−m1+s)`.
fn b_restrict(space: &FermionSpace, rng: &mut ChaCha8Rng, tally: &mut Tally) -> Result<()> {
    for _ in 0..T_POINTS {
        let t = sample_generic_t(rng);
        let b = b_operator(space, Side::RowAlgebra, 0, 1, &t)?;
        for (m1, m2) in two_row_blocks(space.n()) {
            for (m, p) in row_block_projectors(space, m1, m2)? {
                let mut ev = Q::from_integer(1.into());
                for s in m..m2 {
                    ev = ev * (&t + qi((m2 - s) as i64)) / (&t - qi(m1 as i64) + qi(s as i64));
                }
                tally.record(
                    || format!("B_12 on ({m1},{m2})_{m} at t={t}"),
                    compare_matrices(&b.mul(&p), &p.scale(&ev)),
                );
            }
        }
        tally.params.push(t);
    }
    Ok(())
}

/// `B₁₂(−t) C₁₂(t)` acts on the `m`-th summand by `ρ_m(t)`.
fn value_rel(space: &FermionSpace, rng: &mut ChaCha8Rng, tally: &mut Tally) -> Result<()> {
    for _ in 0..T_POINTS {
        let t = sample_generic_t(rng);
        let bc = b_operator(space, Side::RowAlgebra, 0, 1, &-t.clone())?.mul(&c_factor(space, Side::RowAlgebra, 0, 1, &t)?);
        for (m1, m2) in two_row_blocks(space.n()) {
            for (m, p) in row_block_projectors(space, m1, m2)? {
                let rho = rho_eigenvalue(m1, m2, m, &t)?;
                tally.record(
                    || format!("B(-t)C(t) on ({m1},{m2})_{m} at t={t}"),
                    compare_matrices(&bc.mul(&p), &p.scale(&rho)),
                );
            }
        }
        tally.params.push(t);
    }
    Ok(())
}

/// `I₂ − 2 Σ e_aa = −I_n + n Σ e_ii`, and the `gl_2` summand
/// `(m1 + m2 − m, m)` of each row block is the `gl_n` summand `l(m)`.
fn casimir(space: &FermionSpace, tally: &mut Tally) -> Result<()> {
    let n = space.n();
    let deg2 = (0..2).try_fold(MatrixOperator::zero(space.basis().clone()), |acc, a| {
        Ok::<_, Error>(acc.add(space.diagonal(Side::RowAlgebra, a, a)?))
    })?;
    let degn = (0..n).try_fold(MatrixOperator::zero(space.basis().clone()), |acc, i| {
        Ok::<_, Error>(acc.add(space.diagonal(Side::ColumnAlgebra, i, i)?))
    })?;
    let left = space.casimir(Side::RowAlgebra).sub(&deg2.scale(&qi(2)));
    let right = space.casimir(Side::ColumnAlgebra).neg().add(&degn.scale(&qi(n as i64)));
    tally.record(|| format!("Casimir identity on P_2,{n}"), compare_matrices(&left, &right));

    let pairs = space.pair_blocks(Side::ColumnAlgebra, 0, 1)?;
    for (m1, m2) in two_row_blocks(n) {
        for (m, p) in row_block_projectors(space, m1, m2)? {
            let q = pairs
                .iter()
                .find(|b| (b.m1, b.m2, b.m) == (m1, m2, m))
                .ok_or_else(|| Error::Integrity(format!("no gl_n summand l({m}) in ({m1},{m2})")))?;
            tally.record(
                || format!("summand images agree on ({m1},{m2})_{m}"),
                compare_matrices(&p, &q.projector),
            );
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::Status;

    fn run_one(id: IdentityId, k: usize, n: usize) -> crate::duality::Report {
        Verifier::new().run(&Case { id, k, n, seed: 0 })
    }

    #[test]
    fn howe_at_two_by_two() {
        assert_eq!(howe_summands(2, 2).len(), 6);
        let r = run_one(IdentityId::Howe, 2, 2);
        assert_eq!(r.status, Status::Pass, "{:?}", r.witness);
    }

    #[test]
    fn casimir_at_two_by_three() {
        let r = run_one(IdentityId::Casimir, 2, 3);
        assert_eq!(r.status, Status::Pass, "{:?}", r.witness);
    }

    #[test]
    fn vm_checks_at_four() {
        for id in [IdentityId::VmHw, IdentityId::VmNorm] {
            let r = run_one(id, 2, 4);
            assert_eq!(r.status, Status::Pass, "{id}: {:?}", r.witness);
        }
    }

    #[test]
    fn two_row_identities_reject_other_shapes() {
        let r = run_one(IdentityId::ValueRel, 3, 2);
        assert_eq!(r.status, Status::Fail);
    }

    #[test]
    fn restriction_and_value_relation_at_three() {
        for id in [IdentityId::BRestrict, IdentityId::ValueRel, IdentityId::Ortho, IdentityId::Adjoint] {
            let r = run_one(id, 2, 3);
            assert_eq!(r.status, Status::Pass, "{id}: {:?}", r.witness);
        }
    }

    #[test]
    fn r_cross_at_two() {
        let r = run_one(IdentityId::RCross, 2, 2);
        assert_eq!(r.status, Status::Pass, "{:?}", r.witness);
        assert_eq!(r.params.len(), T_POINTS);
    }
}
