//! Differential operators: rational and trigonometric KZ and DD.

use super::{derivative_entry, lift_scaled, nonzero, Args, FirstOrderOp};
use crate::error::{Error, Result};
use crate::exactalg::{q, MatrixOperator, Scalar, Q};
use crate::representation::{FermionSpace, Side};

/// `Ω = Σ e_ab ⊗ e_ba`, and its halves
/// `Ω± = ½ Σ e_aa ⊗ e_aa + Σ_{a<b} e_ab ⊗ e_ba` (resp. `e_ba ⊗ e_ab`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OmegaFlavor {
    Full,
    Plus,
    Minus,
}

/// `Ω_(ij)` with the first tensor leg in factor `i`.
pub fn omega_matrix(
    space: &FermionSpace,
    side: Side,
    flavor: OmegaFlavor,
    i: usize,
    j: usize,
) -> Result<MatrixOperator<Q>> {
    if i == j {
        return Err(Error::Argument(format!("Omega needs distinct factors, got {}", i + 1)));
    }
    let r = space.rank(side);
    let half = q(1, 2);
    let mut out = MatrixOperator::zero(space.basis().clone());
    for a in 0..r {
        for b in 0..r {
            let (coeff, (p, pq), (s, sq)) = match flavor {
                OmegaFlavor::Full => (None, (a, b), (b, a)),
                _ if a == b => (Some(&half), (a, a), (a, a)),
                OmegaFlavor::Plus if a < b => (None, (a, b), (b, a)),
                OmegaFlavor::Minus if a < b => (None, (b, a), (a, b)),
                _ => continue,
            };
            let term = space.generator(side, i, p, pq)?.mul(space.generator(side, j, s, sq)?);
            out = match coeff {
                Some(c) => out.add(&term.scale(c)),
                None => out.add(&term),
            };
        }
    }
    Ok(out)
}

fn check_index(what: &str, idx: usize, len: usize) -> Result<()> {
    if idx >= len {
        return Err(Error::Argument(format!("{what} index {} out of range 1..={len}", idx + 1)));
    }
    Ok(())
}

fn check_arity<T: Scalar>(space: &FermionSpace, args: &Args<T>) -> Result<()> {
    let side = args.side();
    let (f, r) = (space.factors(side), space.rank(side));
    if args.spectral.len() != f || args.dynamical.len() != r {
        return Err(Error::Argument(format!(
            "{} operators take {f} spectral and {r} dynamical arguments",
            side.label()
        )));
    }
    Ok(())
}

fn difference<T: Scalar>(xs: &[T], i: usize, j: usize, name: &str) -> Result<T> {
    nonzero(xs[i].clone() - xs[j].clone(), || format!("{name}{} = {name}{}", i + 1, j + 1))
}

/// `∇_{z_i} = κ ∂_{z_i} − Σ_a λ_a (e_aa)_(i) − Σ_{j≠i} Ω_(ij) / (z_i − z_j)`
/// in the spectral slot `i` of `args`.
pub fn kz_rational<T: Scalar>(space: &FermionSpace, args: &Args<T>, i: usize) -> Result<FirstOrderOp<T>> {
    check_arity(space, args)?;
    let side = args.side();
    check_index("spectral", i, args.spectral.len())?;
    let mut zeroth = MatrixOperator::zero(space.basis().clone());
    for (a, la) in args.dynamical.iter().enumerate() {
        zeroth = zeroth.sub(&lift_scaled(space.generator(side, i, a, a)?, la));
    }
    for j in 0..args.spectral.len() {
        if j == i {
            continue;
        }
        let d = difference(&args.spectral, i, j, "spectral")?;
        let om = omega_matrix(space, side, OmegaFlavor::Full, i, j)?;
        zeroth = zeroth.sub(&lift_scaled(&om, &(T::one() / d)));
    }
    Ok(FirstOrderOp {
        derivative: derivative_entry(&args.subst.spectral[i], args.kappa_t()),
        zeroth,
    })
}

/// `∇̂_{z_i} = κ z_i ∂_{z_i} − Σ_a (λ_a − E_aa/2)(e_aa)_(i)
///           − Σ_{j≠i} (z_i Ω⁺_(ij) + z_j Ω⁻_(ij)) / (z_i − z_j)`.
pub fn kz_trig<T: Scalar>(space: &FermionSpace, args: &Args<T>, i: usize) -> Result<FirstOrderOp<T>> {
    check_arity(space, args)?;
    let side = args.side();
    check_index("spectral", i, args.spectral.len())?;
    let half = q(1, 2);
    let mut zeroth = MatrixOperator::zero(space.basis().clone());
    for (a, la) in args.dynamical.iter().enumerate() {
        let local = space.generator(side, i, a, a)?;
        zeroth = zeroth.sub(&lift_scaled(local, la));
        let e = space.diagonal(side, a, a)?.mul(local).scale(&half);
        zeroth = zeroth.add(&e.lift());
    }
    for j in 0..args.spectral.len() {
        if j == i {
            continue;
        }
        let d = difference(&args.spectral, i, j, "spectral")?;
        let plus = omega_matrix(space, side, OmegaFlavor::Plus, i, j)?;
        let minus = omega_matrix(space, side, OmegaFlavor::Minus, i, j)?;
        let zi = args.spectral[i].clone() / d.clone();
        let zj = args.spectral[j].clone() / d;
        zeroth = zeroth
            .sub(&lift_scaled(&plus, &zi))
            .sub(&lift_scaled(&minus, &zj));
    }
    let coeff = args.kappa_t() * args.spectral[i].clone();
    Ok(FirstOrderOp {
        derivative: derivative_entry(&args.subst.spectral[i], coeff),
        zeroth,
    })
}

/// `E_ab E_ba − E_aa` in the diagonal action.
fn dd_pair(space: &FermionSpace, side: Side, a: usize, b: usize) -> Result<MatrixOperator<Q>> {
    Ok(space
        .diagonal(side, a, b)?
        .mul(space.diagonal(side, b, a)?)
        .sub(space.diagonal(side, a, a)?))
}

fn spectral_sum<T: Scalar>(space: &FermionSpace, args: &Args<T>, a: usize) -> Result<MatrixOperator<T>> {
    let side = args.side();
    let mut out = MatrixOperator::zero(space.basis().clone());
    for (i, zi) in args.spectral.iter().enumerate() {
        out = out.add(&lift_scaled(space.generator(side, i, a, a)?, zi));
    }
    Ok(out)
}

/// `D_{λ_a} = κ ∂_{λ_a} − Σ_i z_i (e_aa)_(i) − Σ_{b≠a} (E_ab E_ba − E_aa) / (λ_a − λ_b)`
/// in the dynamical slot `a` of `args`.
pub fn dd_rational<T: Scalar>(space: &FermionSpace, args: &Args<T>, a: usize) -> Result<FirstOrderOp<T>> {
    check_arity(space, args)?;
    let side = args.side();
    check_index("dynamical", a, args.dynamical.len())?;
    let mut zeroth = spectral_sum(space, args, a)?.neg();
    for b in 0..args.dynamical.len() {
        if b == a {
            continue;
        }
        let d = difference(&args.dynamical, a, b, "dynamical")?;
        zeroth = zeroth.sub(&lift_scaled(&dd_pair(space, side, a, b)?, &(T::one() / d)));
    }
    Ok(FirstOrderOp {
        derivative: derivative_entry(&args.subst.dynamical[a], args.kappa_t()),
        zeroth,
    })
}

/// `D̂_{λ_a} = κ λ_a ∂_{λ_a} + E_aa²/2 − Σ_i z_i (e_aa)_(i)
///           − Σ_b Σ_{i<j} (e_ab)_(i) (e_ba)_(j)
///           − Σ_{b≠a} λ_b / (λ_a − λ_b) (E_ab E_ba − E_aa)`.
pub fn dd_trig<T: Scalar>(space: &FermionSpace, args: &Args<T>, a: usize) -> Result<FirstOrderOp<T>> {
    check_arity(space, args)?;
    let side = args.side();
    check_index("dynamical", a, args.dynamical.len())?;
    let r = args.dynamical.len();
    let f = args.spectral.len();
    let eaa = space.diagonal(side, a, a)?;
    let mut constant = eaa.mul(eaa).scale(&q(1, 2));
    for b in 0..r {
        for i in 0..f {
            for j in i + 1..f {
                constant = constant.sub(&space.generator(side, i, a, b)?.mul(space.generator(side, j, b, a)?));
            }
        }
    }
    let mut zeroth = constant.lift::<T>().sub(&spectral_sum(space, args, a)?);
    for b in 0..r {
        if b == a {
            continue;
        }
        let d = difference(&args.dynamical, a, b, "dynamical")?;
        let c = args.dynamical[b].clone() / d;
        zeroth = zeroth.sub(&lift_scaled(&dd_pair(space, side, a, b)?, &c));
    }
    let coeff = args.kappa_t() * args.dynamical[a].clone();
    Ok(FirstOrderOp {
        derivative: derivative_entry(&args.subst.dynamical[a], coeff),
        zeroth,
    })
}
