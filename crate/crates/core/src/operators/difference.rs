//! Difference operators: B-series, qDD (`X_a`, `Q`), qKZ (`K_i`, `Z`) and the
//! diagonal C- and N-factors.

use super::rmatrix::r_matrix_full;
use super::{nonzero, powi, shift_entry, singular_to_genericity, Args, ShiftOp};
use crate::error::{Error, Result};
use crate::exactalg::{MatrixOperator, Scalar, Q};
use crate::representation::{FermionSpace, Side};

fn factorial(s: usize) -> Q {
    (1..=s as i64).fold(Q::from_integer(1.into()), |acc, i| acc * Q::from_integer(i.into()))
}

fn weights(space: &FermionSpace, side: Side) -> Vec<Vec<usize>> {
    space.basis().monomials().iter().map(|d| side.weight(d)).collect()
}

fn check_pair(space: &FermionSpace, side: Side, a: usize, b: usize) -> Result<()> {
    let r = space.rank(side);
    if a >= r || b >= r || a == b {
        return Err(Error::Argument(format!("generator pair ({},{}) invalid for rank {r}", a + 1, b + 1)));
    }
    Ok(())
}

/// `B_ab(t) = 1 + Σ_{s≥1} e_ba^s e_ab^s / s! · ∏_{j=1}^{s} (t − e_aa + e_bb − j)^{-1}`
/// in the diagonal action.
///
/// The series stops at the first `s` with `e_ab^s = 0`. Denominators are
/// checked on the weights where the `s`-th term acts.
pub fn b_operator<T: Scalar>(space: &FermionSpace, side: Side, a: usize, b: usize, t: &T) -> Result<MatrixOperator<T>> {
    b_operator_ordered(space, side, a, b, t, true)
}

/// `nilpotent_first`: `e_ba^s e_ab^s · D_s` when set, `D_s · e_ba^s e_ab^s`
/// otherwise.
pub(crate) fn b_operator_ordered<T: Scalar>(
    space: &FermionSpace,
    side: Side,
    a: usize,
    b: usize,
    t: &T,
    nilpotent_first: bool,
) -> Result<MatrixOperator<T>> {
    check_pair(space, side, a, b)?;
    let eab = space.diagonal(side, a, b)?;
    let eba = space.diagonal(side, b, a)?;
    let ws = weights(space, side);
    let mut out = MatrixOperator::identity(space.basis().clone());
    let mut up = eab.clone();
    let mut down = eba.clone();
    let mut denom: Vec<T> = vec![T::one(); space.dim()];
    let mut s = 1usize;
    while !up.is_zero() {
        assert!(s <= space.dim(), "B-series failed to terminate");
        let term = down.mul(&up).scale(&factorial(s).recip());
        let mut active = vec![false; space.dim()];
        for r in 0..term.dim() {
            for (c, _) in term.row(r) {
                active[*c] = true;
                active[r] = true;
            }
        }
        for (j, w) in ws.iter().enumerate() {
            let x = t.clone() - T::from_int(w[a] as i64) + T::from_int(w[b] as i64) - T::from_int(s as i64);
            if active[j] && x.is_zero() {
                return Err(Error::Genericity(format!(
                    "B_{}{} pole at s={s} on weight {:?}",
                    a + 1,
                    b + 1,
                    w
                )));
            }
            if !x.is_zero() {
                denom[j] = denom[j].clone() / x;
            }
        }
        let lifted: MatrixOperator<T> = term.lift();
        out = out.add(&if nilpotent_first {
            lifted.scale_columns(&denom)
        } else {
            lifted.scale_rows(&denom)
        });
        up = up.mul(eab);
        down = down.mul(eba);
        s += 1;
    }
    Ok(out)
}

/// `C_ab(t)`: diagonal, `∏_{i=0}^{q−1}(t+p−i) / ∏_{j=1}^{q}(t−j)` on the
/// weight with `e_aa = p`, `e_bb = q`.
pub fn c_factor<T: Scalar>(space: &FermionSpace, side: Side, a: usize, b: usize, t: &T) -> Result<MatrixOperator<T>> {
    check_pair(space, side, a, b)?;
    let diag = weights(space, side)
        .iter()
        .map(|w| c_value(w[a], w[b], t))
        .collect::<Result<Vec<T>>>()?;
    Ok(MatrixOperator::diagonal(space.basis().clone(), diag))
}

fn c_value<T: Scalar>(p: usize, q: usize, t: &T) -> Result<T> {
    let mut acc = T::one();
    for i in 0..q {
        acc = acc * (t.clone() + T::from_int(p as i64 - i as i64));
    }
    for j in 1..=q {
        let d = nonzero(t.clone() - T::from_int(j as i64), || format!("C-factor pole at (q={q}, j={j})"))?;
        acc = acc / d;
    }
    Ok(acc)
}

/// `N_a(v) = ∏_{b<a} C_ba(v_b − v_a − κ) / ∏_{b>a} C_ab(v_a − v_b)`, with
/// `v` the dynamical variables of `side` (`λ` for `gl_k`, `z` for `gl_n`).
pub fn n_factor<T: Scalar>(space: &FermionSpace, side: Side, a: usize, vars: &[T], kappa: &Q) -> Result<MatrixOperator<T>> {
    let r = space.rank(side);
    if vars.len() != r || a >= r {
        return Err(Error::Argument(format!("N-factor index {} with {} variables, rank {r}", a + 1, vars.len())));
    }
    let k_t = T::from_q(kappa.clone());
    let diag = weights(space, side)
        .iter()
        .map(|w| {
            let mut acc = T::one();
            for b in 0..a {
                acc = acc * c_value(w[b], w[a], &(vars[b].clone() - vars[a].clone() - k_t.clone()))?;
            }
            for b in a + 1..r {
                let c = c_value(w[a], w[b], &(vars[a].clone() - vars[b].clone()))?;
                acc = acc / nonzero(c, || format!("N-factor denominator C_{}{} vanishes", a + 1, b + 1))?;
            }
            Ok(acc)
        })
        .collect::<Result<Vec<T>>>()?;
    Ok(MatrixOperator::diagonal(space.basis().clone(), diag))
}

/// `∏_f (v_f^{−e_cc})_(f)` over the tensor factors, for a fixed generator
/// index `c` (used with `c = a` for `X_a`).
fn occupancy_power<T: Scalar>(space: &FermionSpace, side: Side, c: usize, vals: &[T]) -> Result<MatrixOperator<T>> {
    let k = space.k();
    let diag = space
        .basis()
        .monomials()
        .iter()
        .map(|d| {
            let mut acc = T::one();
            for (f, v) in vals.iter().enumerate() {
                if d.contains(side.position(k, f, c)) {
                    acc = acc / v.clone();
                }
            }
            acc
        })
        .collect();
    Ok(MatrixOperator::diagonal(space.basis().clone(), diag))
}

/// `∏_a (v_a^{−e_aa})_(f)` inside one tensor factor.
fn factor_power<T: Scalar>(space: &FermionSpace, side: Side, f: usize, vals: &[T]) -> MatrixOperator<T> {
    let k = space.k();
    let diag = space
        .basis()
        .monomials()
        .iter()
        .map(|d| {
            vals.iter().enumerate().fold(T::one(), |acc, (c, v)| {
                let e = d.contains(side.position(k, f, c)) as i64;
                acc * powi(v, -e)
            })
        })
        .collect();
    MatrixOperator::diagonal(space.basis().clone(), diag)
}

fn all_nonzero<T: Scalar>(vals: &[T], what: &str) -> Result<()> {
    for (i, v) in vals.iter().enumerate() {
        if v.is_zero() {
            return Err(Error::Genericity(format!("{what}{} = 0", i + 1)));
        }
    }
    Ok(())
}

/// `X_a = (B_{a,r}(λ_{a r}) ⋯ B_{a,a+1}(λ_{a,a+1}))^{-1} · ∏_i (z_i^{−e_aa})_(i)
///        · B_{1a}(λ_{1a} − κ) ⋯ B_{a−1,a}(λ_{a−1,a} − κ)`.
pub fn x_product<T: Scalar>(space: &FermionSpace, args: &Args<T>, a: usize) -> Result<MatrixOperator<T>> {
    let side = args.side();
    let r = space.rank(side);
    if args.dynamical.len() != r || args.spectral.len() != space.factors(side) || a >= r {
        return Err(Error::Argument(format!("X_{} does not match the arguments", a + 1)));
    }
    all_nonzero(&args.spectral, "spectral")?;
    let lam = &args.dynamical;
    let kappa = args.kappa_t();
    let basis = space.basis().clone();
    let mut left = MatrixOperator::identity(basis.clone());
    for b in (a + 1..r).rev() {
        left = left.mul(&b_operator(space, side, a, b, &(lam[a].clone() - lam[b].clone()))?);
    }
    let left_inv = left
        .inverse()
        .map_err(|e| singular_to_genericity(e, &format!("B-product of X_{}", a + 1)))?;
    let mut right = MatrixOperator::identity(basis);
    for b in 0..a {
        right = right.mul(&b_operator(space, side, b, a, &(lam[b].clone() - lam[a].clone() - kappa.clone()))?);
    }
    Ok(left_inv.mul(&occupancy_power(space, side, a, &args.spectral)?).mul(&right))
}

/// `Q_a = X_a · T_a` with step `κ` in dynamical slot `a`.
pub fn qdd_operator<T: Scalar>(space: &FermionSpace, args: &Args<T>, a: usize) -> Result<ShiftOp<T>> {
    let coeff = x_product(space, args, a)?;
    let (var, step) = shift_entry(&args.subst.dynamical[a], &args.kappa);
    Ok(ShiftOp { coeff, var, step })
}

/// `K_i = (R_{i,n}(z_{i n}) ⋯ R_{i,i+1}(z_{i,i+1}))^{-1} · ∏_a (λ_a^{−e_aa})_(i)
///        · R_{1i}(z_{1i} − κ) ⋯ R_{i−1,i}(z_{i−1,i} − κ)`.
pub fn k_product<T: Scalar>(space: &FermionSpace, args: &Args<T>, i: usize) -> Result<MatrixOperator<T>> {
    let side = args.side();
    let f = space.factors(side);
    if args.dynamical.len() != space.rank(side) || args.spectral.len() != f || i >= f {
        return Err(Error::Argument(format!("K_{} does not match the arguments", i + 1)));
    }
    all_nonzero(&args.dynamical, "dynamical")?;
    let z = &args.spectral;
    let kappa = args.kappa_t();
    let basis = space.basis().clone();
    let mut left = MatrixOperator::identity(basis.clone());
    for j in (i + 1..f).rev() {
        left = left.mul(&r_matrix_full(space, side, i, j, &(z[i].clone() - z[j].clone()))?);
    }
    let left_inv = left
        .inverse()
        .map_err(|e| singular_to_genericity(e, &format!("R-product of K_{}", i + 1)))?;
    let mut right = MatrixOperator::identity(basis);
    for j in 0..i {
        right = right.mul(&r_matrix_full(space, side, j, i, &(z[j].clone() - z[i].clone() - kappa.clone()))?);
    }
    Ok(left_inv.mul(&factor_power(space, side, i, &args.dynamical)).mul(&right))
}

/// `Z_i = K_i · T_i` with step `κ` in spectral slot `i`.
pub fn qkz_operator<T: Scalar>(space: &FermionSpace, args: &Args<T>, i: usize) -> Result<ShiftOp<T>> {
    let coeff = k_product(space, args, i)?;
    let (var, step) = shift_entry(&args.subst.spectral[i], &args.kappa);
    Ok(ShiftOp { coeff, var, step })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{q, qi};
    use crate::exterior::{Monomial, SparseVector};
    use crate::operators::{rho_eigenvalue, EvalPoint, Substitution, VarId};
    use crate::representation::{highest_weight_check, weight_basis, WeightPair};
    use proptest::prelude::*;

    #[test]
    fn b_on_vector_module() {
        // gl_2 on ⟨x1, x2⟩: the k=2, n=1 space under the row action
        let space = FermionSpace::new(2, 1).unwrap();
        let t = q(7, 3);
        let b = b_operator(&space, Side::RowAlgebra, 0, 1, &t).unwrap();
        let x1 = space.basis().index_of(&Monomial::from_bits(2, 1, 0b01)).unwrap();
        let x2 = space.basis().index_of(&Monomial::from_bits(2, 1, 0b10)).unwrap();
        assert_eq!(b.get(x1, x1), qi(1));
        assert_eq!(b.get(x2, x2), (&t + qi(1)) / &t);
        assert_eq!(b.get(x1, x2), qi(0));
        assert!(b.is_diagonal());
    }

    #[test]
    fn b_fixes_highest_vectors() {
        let space = FermionSpace::new(2, 3).unwrap();
        let b = b_operator(&space, Side::RowAlgebra, 0, 1, &q(11, 5)).unwrap();
        for (j, d) in space.basis().monomials().iter().enumerate() {
            let v = SparseVector::monomial(d.clone());
            let up = space.diagonal(Side::RowAlgebra, 0, 1).unwrap().column(j);
            if up.is_empty() {
                assert_eq!(b.column_vector(j), v);
            }
        }
    }

    #[test]
    fn b_ordering_is_immaterial() {
        for (k, n) in [(2, 2), (2, 3), (3, 2)] {
            let space = FermionSpace::new(k, n).unwrap();
            for side in [Side::RowAlgebra, Side::ColumnAlgebra] {
                let r = space.rank(side);
                for a in 0..r {
                    for b in (0..r).filter(|&b| b != a) {
                        let t = q(13, 7);
                        let x = b_operator_ordered(&space, side, a, b, &t, true).unwrap();
                        let y = b_operator_ordered(&space, side, a, b, &t, false).unwrap();
                        assert_eq!(x, y);
                    }
                }
            }
        }
    }

    #[test]
    fn b_pole_is_reported() {
        let space = FermionSpace::new(2, 1).unwrap();
        // on x2: t − 0 + 1 − 1 = t
        let e = b_operator(&space, Side::RowAlgebra, 0, 1, &qi(0)).unwrap_err();
        assert!(matches!(e, Error::Genericity(_)));
    }

    /// On the gl_2 weight block `[m1, m2]` of `𝔓_{2,n}`, highest vectors of
    /// the summand `(m1+m2−m, m)` are the kernel of `e_12` there.
    #[test]
    fn b_restriction_eigenvalues() {
        for n in 1..=4usize {
            let space = FermionSpace::new(2, n).unwrap();
            let t = q(29, 11);
            let b = b_operator(&space, Side::RowAlgebra, 0, 1, &t).unwrap();
            let e12 = space.diagonal(Side::RowAlgebra, 0, 1).unwrap();
            let f21 = space.diagonal(Side::RowAlgebra, 1, 0).unwrap();
            for d in space.basis().monomials() {
                let v = SparseVector::monomial(d.clone());
                let w = Side::RowAlgebra.weight(d);
                let (m1, m2) = (w[0], w[1]);
                // walk down from each highest vector of weight (m1+m2−m, m)
                let hv = highest_weight_check(Side::RowAlgebra, &v).unwrap();
                if !hv.is_highest || m1 < m2 {
                    continue;
                }
                let m = m2;
                let mut u = v.clone();
                for steps in 0..=(m1 - m2) {
                    let bu = b.apply(&u).unwrap();
                    let mut expect = Q::from_integer(1.into());
                    let m2s = m2 + steps;
                    let m1s = m1 - steps;
                    for s in m..m2s {
                        expect *= (&t + qi((m2s - s) as i64)) / (&t - qi(m1s as i64) + qi(s as i64));
                    }
                    assert_eq!(bu, u.scale(&expect), "n={n} weight ({m1s},{m2s}) m={m}");
                    u = f21.apply(&u).unwrap();
                }
                assert!(e12.apply(&v).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn c_factor_values() {
        let space = FermionSpace::new(2, 2).unwrap();
        let t = q(9, 4);
        let c = c_factor(&space, Side::RowAlgebra, 0, 1, &t).unwrap();
        for (j, d) in space.basis().monomials().iter().enumerate() {
            let w = Side::RowAlgebra.weight(d);
            let expect = match (w[0], w[1]) {
                (_, 0) => qi(1),
                (1, 1) => (&t + qi(1)) / (&t - qi(1)),
                (0, 1) => &t / (&t - qi(1)),
                (p, q2) => {
                    let mut e = Q::from_integer(1.into());
                    for i in 0..q2 {
                        e *= &t + qi(p as i64 - i as i64);
                    }
                    for jj in 1..=q2 {
                        e /= &t - qi(jj as i64);
                    }
                    e
                }
            };
            assert_eq!(c.get(j, j), expect);
        }
        assert!(c_factor(&space, Side::RowAlgebra, 0, 1, &qi(1)).is_err());
    }

    /// Weight `(1,1)` of `𝔓_{2,2}` under `gl_2`: the highest vector spans the
    /// `m = 1` part, `e_21` of the `(2,0)` highest vector the `m = 0` part.
    #[test]
    fn c_times_b_on_weight_one_one() {
        let space = FermionSpace::new(2, 2).unwrap();
        let t = q(5, 3);
        let cb = c_factor(&space, Side::RowAlgebra, 0, 1, &t)
            .unwrap()
            .mul(&b_operator(&space, Side::RowAlgebra, 0, 1, &(-t.clone())).unwrap());
        let f21 = space.diagonal(Side::RowAlgebra, 1, 0).unwrap();
        let top = SparseVector::monomial(Monomial::from_bits(2, 2, 0b0101));
        assert!(highest_weight_check(Side::RowAlgebra, &top).unwrap().is_highest);
        let low = f21.apply(&top).unwrap();
        assert_eq!(cb.apply(&low).unwrap(), low.scale(&rho_eigenvalue(1, 1, 0, &t).unwrap()));
        let wp = WeightPair::new(vec![1, 1], vec![1, 1]).unwrap();
        let block = weight_basis(&wp);
        let mut hv = SparseVector::zero(2, 2);
        for sign in [1, -1] {
            let mut v = SparseVector::zero(2, 2);
            v.add_term(block[0].clone(), qi(1));
            v.add_term(block[1].clone(), qi(sign));
            if highest_weight_check(Side::RowAlgebra, &v).unwrap().is_highest {
                hv = v;
            }
        }
        assert!(!hv.is_zero());
        assert_eq!(cb.apply(&hv).unwrap(), hv.scale(&rho_eigenvalue(1, 1, 1, &t).unwrap()));
        assert_eq!(rho_eigenvalue(1, 1, 0, &t).unwrap(), qi(1));
    }

    fn generic_point(k: usize, n: usize) -> EvalPoint {
        let z = (0..n).map(|i| q(7 * i as i64 + 3, 5)).collect();
        let l = (0..k).map(|a| q(-11 * a as i64 - 2, 3)).collect();
        EvalPoint::new(z, l, q(3, 8))
    }

    #[test]
    fn x_product_reassembly() {
        let space = FermionSpace::new(2, 2).unwrap();
        let pt = generic_point(2, 2);
        let args = Args::at(&Substitution::natural(Side::RowAlgebra, 2, 2), &pt);
        let x0 = x_product(&space, &args, 0).unwrap();
        let b01 = b_operator(&space, Side::RowAlgebra, 0, 1, &(&pt.lambda[0] - &pt.lambda[1])).unwrap();
        let zpow = MatrixOperator::diagonal(
            space.basis().clone(),
            space
                .basis()
                .monomials()
                .iter()
                .map(|d| {
                    let mut acc = Q::from_integer(1.into());
                    for i in 0..2 {
                        if d.get(0, i) {
                            acc /= &pt.z[i];
                        }
                    }
                    acc
                })
                .collect(),
        );
        assert_eq!(x0, b01.inverse().unwrap().mul(&zpow));
        let x1 = x_product(&space, &args, 1).unwrap();
        let b01s = b_operator(&space, Side::RowAlgebra, 0, 1, &(&pt.lambda[0] - &pt.lambda[1] - &pt.kappa)).unwrap();
        let zpow1 = MatrixOperator::diagonal(
            space.basis().clone(),
            space
                .basis()
                .monomials()
                .iter()
                .map(|d| {
                    let mut acc = Q::from_integer(1.into());
                    for i in 0..2 {
                        if d.get(1, i) {
                            acc /= &pt.z[i];
                        }
                    }
                    acc
                })
                .collect(),
        );
        assert_eq!(x1, zpow1.mul(&b01s));
        let q1 = qdd_operator(&space, &args, 1).unwrap();
        assert_eq!(q1.coeff, x1);
        assert_eq!((q1.var, q1.step), (VarId::Lambda(1), pt.kappa.clone()));
    }

    #[test]
    fn single_row_products_are_diagonal() {
        let space = FermionSpace::new(1, 3).unwrap();
        let pt = generic_point(1, 3);
        let args = Args::at(&Substitution::natural(Side::RowAlgebra, 1, 3), &pt);
        let x = x_product(&space, &args, 0).unwrap();
        assert!(x.is_diagonal());
        for (j, d) in space.basis().monomials().iter().enumerate() {
            let mut e = Q::from_integer(1.into());
            for i in 0..3 {
                if d.get(0, i) {
                    e /= &pt.z[i];
                }
            }
            assert_eq!(x.get(j, j), e);
        }
        let space = FermionSpace::new(2, 1).unwrap();
        let pt = generic_point(2, 1);
        let args = Args::at(&Substitution::natural(Side::RowAlgebra, 2, 1), &pt);
        let kk = k_product(&space, &args, 0).unwrap();
        for (j, d) in space.basis().monomials().iter().enumerate() {
            let mut e = Q::from_integer(1.into());
            for a in 0..2 {
                if d.get(a, 0) {
                    e /= &pt.lambda[a];
                }
            }
            assert_eq!(kk.get(j, j), e);
        }
    }

    #[test]
    fn k_product_reassembly() {
        let space = FermionSpace::new(2, 3).unwrap();
        let pt = generic_point(2, 3);
        for side in [Side::RowAlgebra, Side::ColumnAlgebra] {
            let args = Args::at(&Substitution::natural(side, 2, 3), &pt);
            let z = &args.spectral;
            let f = z.len();
            for i in 0..f {
                let mut left = space.identity();
                for j in (i + 1..f).rev() {
                    left = left.mul(&r_matrix_full(&space, side, i, j, &(&z[i] - &z[j])).unwrap());
                }
                let diag = MatrixOperator::diagonal(
                    space.basis().clone(),
                    space
                        .basis()
                        .monomials()
                        .iter()
                        .map(|d| {
                            let mut acc = Q::from_integer(1.into());
                            for (c, l) in args.dynamical.iter().enumerate() {
                                if d.contains(side.position(2, i, c)) {
                                    acc /= l;
                                }
                            }
                            acc
                        })
                        .collect(),
                );
                let mut right = space.identity();
                for j in 0..i {
                    right = right.mul(&r_matrix_full(&space, side, j, i, &(&z[j] - &z[i] - &args.kappa)).unwrap());
                }
                let expect = left.inverse().unwrap().mul(&diag).mul(&right);
                assert_eq!(k_product(&space, &args, i).unwrap(), expect);
            }
        }
    }

    #[test]
    fn n_factor_trivial_and_diagonal() {
        let space = FermionSpace::new(1, 2).unwrap();
        let n = n_factor(&space, Side::RowAlgebra, 0, &[q(1, 2)], &qi(1)).unwrap();
        assert_eq!(n, space.identity());
        let space = FermionSpace::new(2, 2).unwrap();
        let n = n_factor(&space, Side::ColumnAlgebra, 1, &[q(1, 2), q(-3, 7)], &q(2, 9)).unwrap();
        assert!(n.is_diagonal());
        // second index: numerator C_12(z1 − z2 − κ) only
        let t = q(1, 2) - q(-3, 7) - q(2, 9);
        assert_eq!(n, c_factor(&space, Side::ColumnAlgebra, 0, 1, &t).unwrap());
    }

    #[test]
    fn products_preserve_weight_blocks() {
        let space = FermionSpace::new(2, 2).unwrap();
        let pt = generic_point(2, 2);
        for side in [Side::RowAlgebra, Side::ColumnAlgebra] {
            let args = Args::at(&Substitution::natural(side, 2, 2), &pt);
            for a in 0..2 {
                assert!(crate::representation::preserves_weights(&x_product(&space, &args, a).unwrap()));
                assert!(crate::representation::preserves_weights(&k_product(&space, &args, a).unwrap()));
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn b_times_inverse_order(num in -500i64..500, den in 1i64..16) {
            let t = q(num, den);
            prop_assume!(den != 1);
            let space = FermionSpace::new(2, 2).unwrap();
            let x = b_operator_ordered(&space, Side::ColumnAlgebra, 1, 0, &t, true).unwrap();
            let y = b_operator_ordered(&space, Side::ColumnAlgebra, 1, 0, &t, false).unwrap();
            prop_assert_eq!(x, y);
        }
    }
}
