//! The six duality relations and the R = C·B reductions behind the last two.

use rand_chacha::ChaCha8Rng;

use super::{compare_first_order, compare_matrices, compare_shift, sample_generic_t, Case, IdentityId, Tally, Verifier};
use crate::error::{Error, Result};
use crate::exactalg::{qi, Q};
use crate::operators::{
    b_operator, c_factor, dd_rational, dd_trig, kz_rational, kz_trig, n_factor, qdd_operator, qkz_operator,
    r_matrix_full, Args, EvalPoint, FirstOrderOp, ShiftOp, Substitution,
};
use crate::representation::{FermionSpace, Side};

/// Values of `t` at which each R = C·B reduction is checked.
pub const REDUCTION_POINTS: usize = 3;

/// The family each side of a relation is built from, with its substitution.
pub struct Relation {
    pub left: Substitution,
    pub right: Substitution,
}

/// Substitution table. The left side always reads the point naturally.
pub fn relation(id: IdentityId, k: usize, n: usize) -> Result<Relation> {
    let nat = |s| Substitution::natural(s, k, n);
    let one = || qi(1);
    let (left, right) = match id {
        // ∇^k(z, λ, κ) vs D^n(λ, −z, −κ)
        IdentityId::Th1 | IdentityId::Th5 => (
            nat(Side::RowAlgebra),
            nat(Side::ColumnAlgebra).map_dynamical(|a| a.negated()).negate_kappa(),
        ),
        // ∇^n(λ, z, κ) vs D^k(z, −λ, −κ)
        IdentityId::Th2 | IdentityId::Th6 => (
            nat(Side::ColumnAlgebra),
            nat(Side::RowAlgebra).map_dynamical(|a| a.negated()).negate_kappa(),
        ),
        // ∇̂^k(z, λ, κ) vs −D̂^n(−λ + 1, z, −κ)
        IdentityId::Th3 => (
            nat(Side::RowAlgebra),
            nat(Side::ColumnAlgebra).map_spectral(|a| a.negated().plus(one())).negate_kappa(),
        ),
        // ∇̂^n(λ, z, κ) vs −D̂^k(−z + 1, λ, −κ)
        IdentityId::Th4 => (
            nat(Side::ColumnAlgebra),
            nat(Side::RowAlgebra).map_spectral(|a| a.negated().plus(one())).negate_kappa(),
        ),
        other => return Err(Error::Argument(format!("{other} is not a duality relation"))),
    };
    Ok(Relation { left, right })
}

pub fn left_first_order(space: &FermionSpace, id: IdentityId, pt: &EvalPoint, idx: usize) -> Result<FirstOrderOp<Q>> {
    let rel = relation(id, space.k(), space.n())?;
    let args = Args::at(&rel.left, pt);
    match id {
        IdentityId::Th1 | IdentityId::Th2 => kz_rational(space, &args, idx),
        _ => kz_trig(space, &args, idx),
    }
}

pub fn right_first_order(space: &FermionSpace, id: IdentityId, pt: &EvalPoint, idx: usize) -> Result<FirstOrderOp<Q>> {
    let rel = relation(id, space.k(), space.n())?;
    let args = Args::at(&rel.right, pt);
    match id {
        IdentityId::Th1 | IdentityId::Th2 => dd_rational(space, &args, idx),
        _ => Ok(dd_trig(space, &args, idx)?.neg()),
    }
}

pub fn left_shift(space: &FermionSpace, id: IdentityId, pt: &EvalPoint, idx: usize) -> Result<ShiftOp<Q>> {
    let rel = relation(id, space.k(), space.n())?;
    qkz_operator(space, &Args::at(&rel.left, pt), idx)
}

/// `N_i(v) · Q_i(…)` with `v` the coordinates read naturally by the right
/// side's dynamical slots (`z` for `gl_n`, `λ` for `gl_k`).
pub fn right_shift(space: &FermionSpace, id: IdentityId, pt: &EvalPoint, idx: usize) -> Result<ShiftOp<Q>> {
    let rel = relation(id, space.k(), space.n())?;
    let side = rel.right.side;
    let vars = match side {
        Side::ColumnAlgebra => &pt.z,
        Side::RowAlgebra => &pt.lambda,
    };
    let nf = n_factor(space, side, idx, vars, &pt.kappa)?;
    Ok(qdd_operator(space, &Args::at(&rel.right, pt), idx)?.premultiply(&nf))
}

/// `R^left_ij(t)` against `C^right_ij(t) · B^right_ij(−t)`.
pub fn reduction_sides(
    space: &FermionSpace,
    left: Side,
    i: usize,
    j: usize,
    t: &Q,
) -> Result<(crate::exactalg::MatrixOperator<Q>, crate::exactalg::MatrixOperator<Q>)> {
    let r = r_matrix_full(space, left, i, j, t)?;
    let right = left.dual();
    let cb = c_factor(space, right, i, j, t)?.mul(&b_operator(space, right, i, j, &-t.clone())?);
    Ok((r, cb))
}

pub(super) fn run(v: &Verifier, case: &Case, pt: &EvalPoint, rng: &mut ChaCha8Rng, tally: &mut Tally) -> Result<()> {
    let space = v.space(case.k, case.n)?;
    let id = case.id;
    let trig = !matches!(id, IdentityId::Th1 | IdentityId::Th2);
    pt.check_generic(trig)?;
    let left_side = relation(id, case.k, case.n)?.left.side;
    let count = space.factors(left_side);
    for idx in 0..count {
        match id {
            IdentityId::Th5 | IdentityId::Th6 => {
                let l = left_shift(&space, id, pt, idx)?;
                let r = right_shift(&space, id, pt, idx)?;
                tally.record(|| format!("{id} index {}", idx + 1), compare_shift(&l, &r));
            }
            _ => {
                let l = left_first_order(&space, id, pt, idx)?;
                let r = right_first_order(&space, id, pt, idx)?;
                tally.record(|| format!("{id} index {}", idx + 1), compare_first_order(&l, &r));
            }
        }
    }
    if matches!(id, IdentityId::Th5 | IdentityId::Th6) {
        for _ in 0..REDUCTION_POINTS {
            let t = sample_generic_t(rng);
            for i in 0..count {
                for j in i + 1..count {
                    let (r, cb) = reduction_sides(&space, left_side, i, j, &t)?;
                    tally.record(|| format!("{id} reduction R_{}{}({t})", i + 1, j + 1), compare_matrices(&r, &cb));
                }
            }
            tally.params.push(t);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;
    use crate::operators::{omega_matrix, OmegaFlavor, VarId};
    use num::Zero;

    fn point11() -> EvalPoint {
        EvalPoint::new(vec![q(3, 2)], vec![q(-5, 3)], q(2, 7))
    }

    fn scalar(op: &crate::exactalg::MatrixOperator<Q>, basis_index: usize) -> Q {
        op.get(basis_index, basis_index)
    }

    // On 𝔓_11 = span{1, x} every operator is diagonal with e11 = (0, 1).

    #[test]
    fn th1_at_one_by_one() {
        let space = FermionSpace::new(1, 1).unwrap();
        let pt = point11();
        let l = left_first_order(&space, IdentityId::Th1, &pt, 0).unwrap();
        let r = right_first_order(&space, IdentityId::Th1, &pt, 0).unwrap();
        // κ∂_z − λ e11 on both sides
        assert_eq!(l.derivative.get(&VarId::Z(0)), Some(&pt.kappa));
        assert_eq!(r.derivative.get(&VarId::Z(0)), Some(&pt.kappa));
        assert_eq!(scalar(&l.zeroth, 1), -pt.lambda[0].clone());
        assert!(scalar(&l.zeroth, 0).is_zero());
        assert_eq!(l, r);
    }

    #[test]
    fn th2_at_one_by_one() {
        let space = FermionSpace::new(1, 1).unwrap();
        let pt = point11();
        let l = left_first_order(&space, IdentityId::Th2, &pt, 0).unwrap();
        let r = right_first_order(&space, IdentityId::Th2, &pt, 0).unwrap();
        assert_eq!(l.derivative.get(&VarId::Lambda(0)), Some(&pt.kappa));
        assert_eq!(scalar(&l.zeroth, 1), -pt.z[0].clone());
        assert_eq!(l, r);
    }

    #[test]
    fn th3_th4_at_one_by_one() {
        let space = FermionSpace::new(1, 1).unwrap();
        let pt = point11();
        for (id, var) in [(IdentityId::Th3, VarId::Z(0)), (IdentityId::Th4, VarId::Lambda(0))] {
            let l = left_first_order(&space, id, &pt, 0).unwrap();
            let r = right_first_order(&space, id, &pt, 0).unwrap();
            assert_eq!(l.derivative.get(&var), Some(&(&pt.kappa * pt.value(var))), "{id}");
            assert_eq!(l, r, "{id}");
        }
    }

    #[test]
    fn th5_th6_at_one_by_one() {
        let space = FermionSpace::new(1, 1).unwrap();
        let pt = point11();
        for (id, var, other) in [
            (IdentityId::Th5, VarId::Z(0), VarId::Lambda(0)),
            (IdentityId::Th6, VarId::Lambda(0), VarId::Z(0)),
        ] {
            let l = left_shift(&space, id, &pt, 0).unwrap();
            let r = right_shift(&space, id, &pt, 0).unwrap();
            // v^{−e11} and a shift of the spectral coordinate by +κ
            assert_eq!(l.var, var);
            assert_eq!(l.step, pt.kappa);
            assert_eq!(scalar(&l.coeff, 0), qi(1));
            assert_eq!(scalar(&l.coeff, 1), qi(1) / pt.value(other));
            assert_eq!(l, r, "{id}");
        }
    }

    #[test]
    fn relations_at_two_by_two() {
        let v = Verifier::new();
        for id in &IdentityId::ALL[..6] {
            for seed in 0..2 {
                let rep = v.run(&Case { id: *id, k: 2, n: 2, seed });
                assert_eq!(rep.status, super::super::Status::Pass, "{id} seed {seed}: {:?}", rep.witness);
            }
        }
    }

    #[test]
    fn corrupted_omega_term_is_caught() {
        let space = FermionSpace::new(2, 2).unwrap();
        let pt = EvalPoint::new(vec![q(1, 3), q(-7, 2)], vec![q(5, 4), qi(2)], q(3, 5));
        let mut l = left_first_order(&space, IdentityId::Th1, &pt, 0).unwrap();
        let r = right_first_order(&space, IdentityId::Th1, &pt, 0).unwrap();
        assert!(compare_first_order(&l, &r).is_none());
        let omega = omega_matrix(&space, Side::RowAlgebra, OmegaFlavor::Full, 0, 1).unwrap();
        let w = (&pt.z[0] - &pt.z[1]).recip();
        l.zeroth = l.zeroth.add(&omega.scale(&w));
        let witness = compare_first_order(&l, &r).expect("corruption must be detected");
        let j = space.basis().monomials().iter().position(|d| Some(d.to_string()) == witness.basis).unwrap();
        assert_ne!(l.zeroth.column(j), r.zeroth.column(j));
    }

    #[test]
    fn reductions_hold() {
        let space = FermionSpace::new(2, 3).unwrap();
        let t = q(11, 6);
        for side in [Side::RowAlgebra, Side::ColumnAlgebra] {
            let f = space.factors(side);
            for i in 0..f {
                for j in i + 1..f {
                    let (r, cb) = reduction_sides(&space, side, i, j, &t).unwrap();
                    assert!(compare_matrices(&r, &cb).is_none(), "{side:?} ({i},{j})");
                }
            }
        }
    }
}
