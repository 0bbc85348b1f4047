//! Pairwise commutators inside the three commuting families, on both sides.
//!
//! With `A = Σ_u a_u ∂_u + A₀`, `A' = Σ_v a'_v ∂_v + A'₀` and `X = M·T_v`:
//!
//! * `[A, A'] = Σ_w (Σ_u a_u ∂_u a'_w − Σ_v a'_v ∂_v a_w) ∂_w
//!   + Σ_u a_u ∂_u A'₀ − Σ_v a'_v ∂_v A₀ + [A₀, A'₀]`;
//! * `[A, X] = Σ_u (a_u − a_u∘T_v) M T_v ∂_u
//!   + (Σ_u a_u ∂_u M + A₀ M − M (A₀∘T_v)) T_v`;
//! * `X X' = X' X` iff `M (M'∘T_v) = M' (M∘T_{v'})`.
//!
//! Derivatives are exact: the constructor is rerun with the differentiated
//! coordinate left symbolic and the result differentiated and evaluated.

use std::collections::{BTreeMap, BTreeSet};

use num::Zero;

use super::{compare_matrices, Case, IdentityId, Outcome, Tally, Verifier, Witness};
use crate::error::{Error, Result};
use crate::exactalg::{MatrixOperator, Scalar, UniRatFun, Q};
use crate::operators::{
    dd_rational, dd_trig, kz_rational, kz_trig, qdd_operator, qkz_operator, Args, EvalPoint, FirstOrderOp, ShiftOp,
    Substitution, VarId,
};
use crate::representation::{FermionSpace, Side};

/// The three families: rational KZ with dynamical operators, trigonometric KZ
/// with dynamical difference operators, qKZ with trigonometric dynamical
/// operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    One,
    Two,
    Three,
}

impl Family {
    pub fn of(id: IdentityId) -> Option<Family> {
        match id {
            IdentityId::Comm1 => Some(Family::One),
            IdentityId::Comm2 => Some(Family::Two),
            IdentityId::Comm3 => Some(Family::Three),
            _ => None,
        }
    }

    /// `(spectral-indexed member, dynamical-indexed member)`.
    fn kinds(self) -> (Kind, Kind) {
        match self {
            Family::One => (Kind::Kz, Kind::Dd),
            Family::Two => (Kind::KzTrig, Kind::Qdd),
            Family::Three => (Kind::Qkz, Kind::DdTrig),
        }
    }

    fn needs_nonzero(self) -> bool {
        self != Family::One
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Kz,
    KzTrig,
    Dd,
    DdTrig,
    Qkz,
    Qdd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Member {
    kind: Kind,
    index: usize,
}

impl Member {
    fn is_shift(self) -> bool {
        matches!(self.kind, Kind::Qkz | Kind::Qdd)
    }

    fn name(self) -> String {
        let op = match self.kind {
            Kind::Kz => "KZ",
            Kind::KzTrig => "trigKZ",
            Kind::Dd => "D",
            Kind::DdTrig => "trigD",
            Kind::Qkz => "qKZ",
            Kind::Qdd => "Q",
        };
        format!("{op}{}", self.index + 1)
    }
}

fn first_order<T: Scalar>(space: &FermionSpace, m: Member, args: &Args<T>) -> Result<FirstOrderOp<T>> {
    match m.kind {
        Kind::Kz => kz_rational(space, args, m.index),
        Kind::KzTrig => kz_trig(space, args, m.index),
        Kind::Dd => dd_rational(space, args, m.index),
        Kind::DdTrig => dd_trig(space, args, m.index),
        _ => Err(Error::Integrity(format!("{} is not a differential operator", m.name()))),
    }
}

fn shift<T: Scalar>(space: &FermionSpace, m: Member, args: &Args<T>) -> Result<ShiftOp<T>> {
    match m.kind {
        Kind::Qkz => qkz_operator(space, args, m.index),
        Kind::Qdd => qdd_operator(space, args, m.index),
        _ => Err(Error::Integrity(format!("{} is not a difference operator", m.name()))),
    }
}

fn eval_at(f: &UniRatFun, x: &Q) -> Result<Q> {
    f.eval(x)
        .map_err(|e| Error::Genericity(format!("symbolic derivative undefined: {e}")))
}

/// Exact `∂_u` of a first-order operator's coefficients at `pt`.
fn diff_first_order(
    space: &FermionSpace,
    m: Member,
    subst: &Substitution,
    pt: &EvalPoint,
    u: VarId,
) -> Result<(BTreeMap<VarId, Q>, MatrixOperator<Q>)> {
    let op = first_order(space, m, &Args::symbolic(subst, pt, u))?;
    let x = pt.value(u);
    let coeffs = op
        .derivative
        .iter()
        .map(|(v, c)| Ok((*v, eval_at(&c.derivative(), x)?)))
        .collect::<Result<_>>()?;
    let zeroth = op.zeroth.derivative().try_map(|f| eval_at(f, x))?;
    Ok((coeffs, zeroth))
}

fn diff_shift(space: &FermionSpace, m: Member, subst: &Substitution, pt: &EvalPoint, u: VarId) -> Result<MatrixOperator<Q>> {
    let op = shift(space, m, &Args::symbolic(subst, pt, u))?;
    op.coeff.derivative().try_map(|f| eval_at(f, pt.value(u)))
}

fn coeff_witness(what: &str, w: VarId, value: &Q) -> Outcome {
    if value.is_zero() {
        None
    } else {
        Some(Witness::note(format!("{what} coefficient of d/d{w} is {value}, not 0")))
    }
}

fn first_first(space: &FermionSpace, a: Member, b: Member, subst: &Substitution, pt: &EvalPoint) -> Result<Outcome> {
    let args = Args::at(subst, pt);
    let opa = first_order(space, a, &args)?;
    let opb = first_order(space, b, &args)?;
    let mut deriv: BTreeMap<VarId, Q> = BTreeMap::new();
    let mut zeroth = opa.zeroth.mul(&opb.zeroth).sub(&opb.zeroth.mul(&opa.zeroth));
    for (u, cu) in &opa.derivative {
        let (db, db0) = diff_first_order(space, b, subst, pt, *u)?;
        for (w, x) in db {
            *deriv.entry(w).or_insert_with(Q::zero) += cu * x;
        }
        zeroth = zeroth.add(&db0.scale(cu));
    }
    for (v, cv) in &opb.derivative {
        let (da, da0) = diff_first_order(space, a, subst, pt, *v)?;
        for (w, x) in da {
            *deriv.entry(w).or_insert_with(Q::zero) -= cv * x;
        }
        zeroth = zeroth.sub(&da0.scale(cv));
    }
    for (w, x) in &deriv {
        if let Some(o) = coeff_witness("commutator", *w, x) {
            return Ok(Some(o));
        }
    }
    Ok(compare_matrices(&zeroth, &MatrixOperator::zero(space.basis().clone())))
}

fn first_shift(space: &FermionSpace, a: Member, x: Member, subst: &Substitution, pt: &EvalPoint) -> Result<Outcome> {
    let args = Args::at(subst, pt);
    let opa = first_order(space, a, &args)?;
    let opx = shift(space, x, &args)?;
    let shifted = pt.shifted(opx.var, &opx.step);
    let opa_s = first_order(space, a, &Args::at(subst, &shifted))?;
    if !opx.coeff.is_zero() {
        let vars: BTreeSet<VarId> = opa.derivative.keys().chain(opa_s.derivative.keys()).copied().collect();
        for w in vars {
            let before = opa.derivative.get(&w).cloned().unwrap_or_else(Q::zero);
            let after = opa_s.derivative.get(&w).cloned().unwrap_or_else(Q::zero);
            if let Some(o) = coeff_witness("commutator", w, &(before - after)) {
                return Ok(Some(o));
            }
        }
    }
    let mut lhs = opa.zeroth.mul(&opx.coeff);
    for (u, cu) in &opa.derivative {
        lhs = lhs.add(&diff_shift(space, x, subst, pt, *u)?.scale(cu));
    }
    let rhs = opx.coeff.mul(&opa_s.zeroth);
    Ok(compare_matrices(&lhs, &rhs))
}

fn shift_shift(space: &FermionSpace, a: Member, b: Member, subst: &Substitution, pt: &EvalPoint) -> Result<Outcome> {
    let args = Args::at(subst, pt);
    let xa = shift(space, a, &args)?;
    let xb = shift(space, b, &args)?;
    let xb_after_a = shift(space, b, &Args::at(subst, &pt.shifted(xa.var, &xa.step)))?;
    let xa_after_b = shift(space, a, &Args::at(subst, &pt.shifted(xb.var, &xb.step)))?;
    Ok(compare_matrices(&xa.coeff.mul(&xb_after_a.coeff), &xb.coeff.mul(&xa_after_b.coeff)))
}

fn members(space: &FermionSpace, side: Side, family: Family) -> Vec<Member> {
    let (spec, dynm) = family.kinds();
    let mut out: Vec<Member> = (0..space.factors(side)).map(|index| Member { kind: spec, index }).collect();
    out.extend((0..space.rank(side)).map(|index| Member { kind: dynm, index }));
    out
}

/// `[A, B] = 0` for one pair of family members.
fn commutator(space: &FermionSpace, a: Member, b: Member, subst: &Substitution, pt: &EvalPoint) -> Result<Outcome> {
    match (a.is_shift(), b.is_shift()) {
        (false, false) => first_first(space, a, b, subst, pt),
        (false, true) => first_shift(space, a, b, subst, pt),
        (true, false) => first_shift(space, b, a, subst, pt),
        (true, true) => shift_shift(space, a, b, subst, pt),
    }
}

pub(super) fn run(v: &Verifier, case: &Case, pt: &EvalPoint, tally: &mut Tally) -> Result<()> {
    let family = Family::of(case.id).ok_or_else(|| Error::Argument(format!("{} is not a family", case.id)))?;
    let space = v.space(case.k, case.n)?;
    pt.check_generic(family.needs_nonzero())?;
    for side in [Side::RowAlgebra, Side::ColumnAlgebra] {
        let subst = Substitution::natural(side, case.k, case.n);
        let ms = members(&space, side, family);
        for (p, a) in ms.iter().enumerate() {
            for b in &ms[p + 1..] {
                let outcome = commutator(&space, *a, *b, &subst, pt)?;
                tally.record(|| format!("{} [{}, {}]", side.label(), a.name(), b.name()), outcome);
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;

    fn pt22() -> EvalPoint {
        EvalPoint::new(vec![q(2, 3), q(-9, 4)], vec![q(7, 5), q(-1, 6)], q(3, 7))
    }

    #[test]
    fn kz_operators_commute_at_two_by_two() {
        let space = FermionSpace::new(2, 2).unwrap();
        let subst = Substitution::natural(Side::RowAlgebra, 2, 2);
        let a = Member { kind: Kind::Kz, index: 0 };
        let b = Member { kind: Kind::Kz, index: 1 };
        assert!(commutator(&space, a, b, &subst, &pt22()).unwrap().is_none());
    }

    #[test]
    fn trig_kz_commutes_with_difference_operators() {
        let space = FermionSpace::new(2, 2).unwrap();
        let subst = Substitution::natural(Side::RowAlgebra, 2, 2);
        for i in 0..2 {
            for a in 0..2 {
                let x = Member { kind: Kind::KzTrig, index: i };
                let y = Member { kind: Kind::Qdd, index: a };
                assert!(commutator(&space, x, y, &subst, &pt22()).unwrap().is_none(), "{i} {a}");
            }
        }
    }

    #[test]
    fn single_dynamical_operator_has_no_partner() {
        let space = FermionSpace::new(1, 2).unwrap();
        let ms = members(&space, Side::RowAlgebra, Family::One);
        assert_eq!(ms.iter().filter(|m| m.kind == Kind::Dd).count(), 1);
    }

    #[test]
    fn non_commuting_pair_is_reported() {
        // κ∂_z1 against the bare shift z1 ↦ z1 + κ does not commute once the
        // zeroth term depends on z1: KZ1 and qKZ1 are from different families
        let space = FermionSpace::new(2, 2).unwrap();
        let subst = Substitution::natural(Side::RowAlgebra, 2, 2);
        let a = Member { kind: Kind::Kz, index: 0 };
        let x = Member { kind: Kind::Qkz, index: 1 };
        assert!(commutator(&space, a, x, &subst, &pt22()).unwrap().is_some());
    }

    #[test]
    fn families_pass_on_both_sides() {
        let v = Verifier::new();
        for id in [IdentityId::Comm1, IdentityId::Comm2, IdentityId::Comm3] {
            let rep = v.run(&Case { id, k: 2, n: 2, seed: 1 });
            assert_eq!(rep.status, super::super::Status::Pass, "{id}: {:?}", rep.witness);
            assert!(rep.checks > 0);
        }
    }
}
