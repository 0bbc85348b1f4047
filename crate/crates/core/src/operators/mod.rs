//! KZ, DD, qKZ and qDD operators as exact matrices on `𝔓_kn`.
//!
//! Every constructor is generic over [`Scalar`], so the same code builds an
//! operator at a rational point (`T = Q`) or with one coordinate left
//! symbolic (`T = UniRatFun`) for exact differentiation.
//!
//! An operator family is built for one [`Side`]. Its arguments are split into
//! *spectral* variables (one per tensor factor) and *dynamical* variables (one
//! per diagonal generator). For `gl_k` these are `z` and `λ`; for `gl_n` they
//! are `λ` and `z`. A [`Substitution`] maps each argument slot to `±v + c` for
//! a coordinate `v` of an [`EvalPoint`], which is how the argument swaps of
//! the duality relations are expressed.

use std::collections::BTreeMap;
use std::fmt;

use num::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{qi, MatrixOperator, Scalar, UniRatFun, Q};
use crate::representation::Side;

mod difference;
mod kz;
mod rmatrix;

pub use difference::{b_operator, c_factor, k_product, n_factor, qdd_operator, qkz_operator, x_product};
pub use kz::{dd_rational, dd_trig, kz_rational, kz_trig, omega_matrix, OmegaFlavor};
pub use rmatrix::{
    alpha_beta, r_matrix_full, r_matrix_solve, r_matrix_spectral, rho_eigenvalue, AlphaBetaMethod, Normalization,
};

/// A coordinate of the evaluation point (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarId {
    Z(usize),
    Lambda(usize),
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarId::Z(i) => write!(f, "z{}", i + 1),
            VarId::Lambda(a) => write!(f, "lambda{}", a + 1),
        }
    }
}

/// Rational values of `z ∈ ℚⁿ`, `λ ∈ ℚᵏ` and `κ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalPoint {
    pub z: Vec<Q>,
    pub lambda: Vec<Q>,
    pub kappa: Q,
}

impl EvalPoint {
    pub fn new(z: Vec<Q>, lambda: Vec<Q>, kappa: Q) -> Self {
        EvalPoint { z, lambda, kappa }
    }

    pub fn k(&self) -> usize {
        self.lambda.len()
    }

    pub fn n(&self) -> usize {
        self.z.len()
    }

    pub fn value(&self, v: VarId) -> &Q {
        match v {
            VarId::Z(i) => &self.z[i],
            VarId::Lambda(a) => &self.lambda[a],
        }
    }

    /// The point with one coordinate moved by `step`.
    pub fn shifted(&self, v: VarId, step: &Q) -> EvalPoint {
        let mut p = self.clone();
        match v {
            VarId::Z(i) => p.z[i] += step,
            VarId::Lambda(a) => p.lambda[a] += step,
        }
        p
    }

    /// Distinct coordinates, `κ ≠ 0`, and nonzero coordinates when
    /// `nonzero` is set (needed by the trigonometric and difference families).
    pub fn check_generic(&self, nonzero: bool) -> Result<()> {
        if self.kappa.is_zero() {
            return Err(Error::Genericity("kappa = 0".into()));
        }
        for (name, xs) in [("z", &self.z), ("lambda", &self.lambda)] {
            for i in 0..xs.len() {
                if nonzero && xs[i].is_zero() {
                    return Err(Error::Genericity(format!("{name}{} = 0", i + 1)));
                }
                for j in i + 1..xs.len() {
                    if xs[i] == xs[j] {
                        return Err(Error::Genericity(format!("{name}{} = {name}{}", i + 1, j + 1)));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Argument slot `scale·var + shift`, with `scale = ±1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Affine {
    pub var: VarId,
    pub scale: i64,
    pub shift: Q,
}

impl Affine {
    pub fn of(var: VarId) -> Self {
        Affine {
            var,
            scale: 1,
            shift: Q::zero(),
        }
    }

    pub fn negated(mut self) -> Self {
        self.scale = -self.scale;
        self.shift = -self.shift;
        self
    }

    pub fn plus(mut self, c: Q) -> Self {
        self.shift += c;
        self
    }

    pub fn eval(&self, pt: &EvalPoint) -> Q {
        qi(self.scale) * pt.value(self.var) + &self.shift
    }
}

/// How one family's arguments are read off an evaluation point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    pub side: Side,
    pub spectral: Vec<Affine>,
    pub dynamical: Vec<Affine>,
    /// The family's `κ` is `kappa_scale · κ`.
    pub kappa_scale: i64,
}

impl Substitution {
    /// `gl_k` reads `(z; λ)`, `gl_n` reads `(λ; z)`, both with `κ`.
    pub fn natural(side: Side, k: usize, n: usize) -> Self {
        let zs: Vec<Affine> = (0..n).map(|i| Affine::of(VarId::Z(i))).collect();
        let ls: Vec<Affine> = (0..k).map(|a| Affine::of(VarId::Lambda(a))).collect();
        let (spectral, dynamical) = match side {
            Side::RowAlgebra => (zs, ls),
            Side::ColumnAlgebra => (ls, zs),
        };
        Substitution {
            side,
            spectral,
            dynamical,
            kappa_scale: 1,
        }
    }

    pub fn map_spectral(mut self, f: impl Fn(Affine) -> Affine) -> Self {
        self.spectral = self.spectral.into_iter().map(f).collect();
        self
    }

    pub fn map_dynamical(mut self, f: impl Fn(Affine) -> Affine) -> Self {
        self.dynamical = self.dynamical.into_iter().map(f).collect();
        self
    }

    pub fn negate_kappa(mut self) -> Self {
        self.kappa_scale = -self.kappa_scale;
        self
    }
}

/// Argument values for one family, numeric or with one symbolic coordinate.
#[derive(Clone, Debug)]
pub struct Args<T> {
    pub subst: Substitution,
    pub spectral: Vec<T>,
    pub dynamical: Vec<T>,
    pub kappa: Q,
}

impl Args<Q> {
    pub fn at(subst: &Substitution, pt: &EvalPoint) -> Self {
        Args {
            spectral: subst.spectral.iter().map(|a| a.eval(pt)).collect(),
            dynamical: subst.dynamical.iter().map(|a| a.eval(pt)).collect(),
            kappa: qi(subst.kappa_scale) * &pt.kappa,
            subst: subst.clone(),
        }
    }
}

impl Args<UniRatFun> {
    /// Every slot reading `active` becomes `±t + c` in the symbolic `t`.
    pub fn symbolic(subst: &Substitution, pt: &EvalPoint, active: VarId) -> Self {
        let lift = |a: &Affine| {
            if a.var == active {
                UniRatFun::var(0) * UniRatFun::from_int(a.scale) + UniRatFun::constant(a.shift.clone())
            } else {
                UniRatFun::constant(a.eval(pt))
            }
        };
        Args {
            spectral: subst.spectral.iter().map(lift).collect(),
            dynamical: subst.dynamical.iter().map(lift).collect(),
            kappa: qi(subst.kappa_scale) * &pt.kappa,
            subst: subst.clone(),
        }
    }
}

impl<T: Scalar> Args<T> {
    pub fn side(&self) -> Side {
        self.subst.side
    }

    pub fn kappa_t(&self) -> T {
        T::from_q(self.kappa.clone())
    }
}

/// `Σ_v c_v ∂/∂v + A`, with derivative coefficients already expressed in the
/// point's coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct FirstOrderOp<T> {
    pub derivative: BTreeMap<VarId, T>,
    pub zeroth: MatrixOperator<T>,
}

impl<T: Scalar> FirstOrderOp<T> {
    pub fn neg(&self) -> Self {
        FirstOrderOp {
            derivative: self.derivative.iter().map(|(v, c)| (*v, -c.clone())).collect(),
            zeroth: self.zeroth.neg(),
        }
    }
}

/// `M · T_v` where `(T_v f)(v) = f(v + step)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftOp<T> {
    pub coeff: MatrixOperator<T>,
    pub var: VarId,
    pub step: Q,
}

impl<T: Scalar> ShiftOp<T> {
    /// `D · M · T_v` for a matrix `D` acting on the left.
    pub fn premultiply(&self, d: &MatrixOperator<T>) -> Self {
        ShiftOp {
            coeff: d.mul(&self.coeff),
            var: self.var,
            step: self.step.clone(),
        }
    }
}

/// Derivative slot `c ∂/∂(±v + s)` rewritten as `±c ∂/∂v`.
fn derivative_entry<T: Scalar>(slot: &Affine, coeff: T) -> BTreeMap<VarId, T> {
    let mut m = BTreeMap::new();
    m.insert(slot.var, coeff * T::from_int(slot.scale));
    m
}

/// Shift of a slot by `step` seen as a shift of its coordinate.
fn shift_entry(slot: &Affine, step: &Q) -> (VarId, Q) {
    (slot.var, step * qi(slot.scale))
}

pub(crate) fn nonzero<T: Scalar>(x: T, what: impl FnOnce() -> String) -> Result<T> {
    if x.is_zero() {
        Err(Error::Genericity(what()))
    } else {
        Ok(x)
    }
}

pub(crate) fn lift_scaled<T: Scalar>(m: &MatrixOperator<Q>, c: &T) -> MatrixOperator<T> {
    if c.is_zero() {
        return MatrixOperator::zero(m.basis().clone());
    }
    m.map(|x| T::from_q(x.clone()) * c.clone())
}

/// `x^e` for an integer exponent (`x ≠ 0` when `e < 0`).
pub(crate) fn powi<T: Scalar>(x: &T, e: i64) -> T {
    let mut acc = T::one();
    for _ in 0..e.unsigned_abs() {
        acc = acc * x.clone();
    }
    if e < 0 {
        T::one() / acc
    } else {
        acc
    }
}

pub(crate) fn singular_to_genericity(e: Error, what: &str) -> Error {
    match e {
        Error::Singular { rank, dim } => Error::Genericity(format!("{what} is singular (rank {rank} < {dim})")),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;
    use num::One;

    #[test]
    fn substitution_reads_points() {
        let pt = EvalPoint::new(vec![q(1, 2), qi(3)], vec![qi(-1)], qi(2));
        let s = Substitution::natural(Side::ColumnAlgebra, 1, 2)
            .map_dynamical(|a| a.negated())
            .map_spectral(|a| a.negated().plus(qi(1)))
            .negate_kappa();
        let args = Args::at(&s, &pt);
        assert_eq!(args.spectral, vec![qi(2)]);
        assert_eq!(args.dynamical, vec![q(-1, 2), qi(-3)]);
        assert_eq!(args.kappa, qi(-2));
        let sym = Args::symbolic(&s, &pt, VarId::Z(1));
        assert_eq!(sym.dynamical[1].eval(&qi(5)).unwrap(), qi(-5));
        assert_eq!(sym.dynamical[0].as_constant(), Some(q(-1, 2)));
    }

    #[test]
    fn genericity_predicates() {
        let pt = EvalPoint::new(vec![qi(1), qi(1)], vec![qi(2)], qi(1));
        assert!(matches!(pt.check_generic(false), Err(Error::Genericity(_))));
        let pt = EvalPoint::new(vec![qi(0), qi(1)], vec![qi(2)], qi(1));
        assert!(pt.check_generic(false).is_ok());
        assert!(pt.check_generic(true).is_err());
        let pt = EvalPoint::new(vec![qi(3)], vec![qi(2)], qi(0));
        assert!(pt.check_generic(false).is_err());
        assert_eq!(pt.shifted(VarId::Lambda(0), &qi(1)).lambda, vec![qi(3)]);
    }

    #[test]
    fn integer_powers() {
        assert_eq!(powi(&q(2, 3), 3), q(8, 27));
        assert_eq!(powi(&q(2, 3), -2), q(9, 4));
        assert_eq!(powi(&q(2, 3), 0), Q::one());
    }
}
