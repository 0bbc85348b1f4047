//! Univariate rational functions over `Q` in one active variable.
//!
//! Numerator and denominator are dense coefficient vectors in ascending
//! degree. The canonical form has coprime parts and a monic denominator, so
//! structural equality is mathematical equality.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{One, Zero};

use super::scalar::{q_to_text, Scalar, Q};
use crate::error::{Error, Result};

/// Dense polynomial over `Q`; empty vector is zero, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Q>,
}

impl Poly {
    pub fn from_coeffs(coeffs: Vec<Q>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn constant(c: Q) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::from_coeffs(vec![Q::zero(), Q::one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Q> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Q::from_integer(i.into()))
            .collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Q) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_else(Q::zero);
                match other.coeffs.get(i) {
                    Some(b) => a + b,
                    None => a,
                }
            })
            .collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::default();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Q::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let c = rem[top].clone() / &lead;
            let shift = top - dd;
            if !c.is_zero() {
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    rem[shift + j] -= &c * b;
                }
                quot[shift] = c;
            }
            rem.pop();
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
            None => Poly::default(),
        }
    }
}

/// Identifies the symbolic variable a [`UniRatFun`] depends on.
pub type VarTag = u32;

/// Rational function of a single active variable.
///
/// Constant functions carry no tag so they mix freely with any variable.
/// Combining two non-constant functions with different tags is a logic error
/// and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniRatFun {
    var: Option<VarTag>,
    num: Poly,
    den: Poly,
}

impl UniRatFun {
    pub fn constant(c: Q) -> Self {
        UniRatFun {
            var: None,
            num: Poly::constant(c),
            den: Poly::constant(Q::one()),
        }
    }

    /// The identity function of variable `tag`.
    pub fn var(tag: VarTag) -> Self {
        UniRatFun {
            var: Some(tag),
            num: Poly::x(),
            den: Poly::constant(Q::one()),
        }
    }

    /// Builds `num/den` in canonical form; errors on a zero denominator.
    pub fn from_parts(var: Option<VarTag>, num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Argument("rational function with zero denominator".into()));
        }
        Ok(Self::canonical(var, num, den))
    }

    fn canonical(var: Option<VarTag>, num: Poly, den: Poly) -> Self {
        let (num, den) = if num.is_zero() {
            (Poly::default(), Poly::constant(Q::one()))
        } else {
            let g = num.gcd(&den);
            let (n, _) = num.div_rem(&g);
            let (d, _) = den.div_rem(&g);
            let lead = d.leading().unwrap().recip();
            (n.scale(&lead), d.scale(&lead))
        };
        let constant = num.degree().unwrap_or(0) == 0 && den.degree() == Some(0);
        UniRatFun {
            var: if constant { None } else { var },
            num,
            den,
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn tag(&self) -> Option<VarTag> {
        self.var
    }

    pub fn as_constant(&self) -> Option<Q> {
        if self.var.is_none() {
            Some(self.num.coeffs().first().cloned().unwrap_or_else(Q::zero))
        } else {
            None
        }
    }

    fn join(a: Option<VarTag>, b: Option<VarTag>) -> Option<VarTag> {
        match (a, b) {
            (Some(x), Some(y)) => {
                assert_eq!(x, y, "mixing rational functions in different variables");
                Some(x)
            }
            (x, None) => x,
            (None, y) => y,
        }
    }

    /// Exact quotient-rule derivative.
    pub fn derivative(&self) -> UniRatFun {
        let num = self
            .num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()));
        let den = self.den.mul(&self.den);
        Self::canonical(self.var, num, den)
    }

    /// Evaluates at `x`; a vanishing denominator is a pole error.
    pub fn eval(&self, x: &Q) -> Result<Q> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::Genericity(format!(
                "pole of rational function at {}",
                q_to_text(x)
            )));
        }
        Ok(self.num.eval(x) / d)
    }
}

impl fmt::Display for UniRatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: &Poly| -> String {
            if p.is_zero() {
                return "0".into();
            }
            let terms: Vec<String> = p
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| match i {
                    0 => q_to_text(c),
                    1 => format!("{}*t", q_to_text(c)),
                    _ => format!("{}*t^{}", q_to_text(c), i),
                })
                .collect();
            terms.join(" + ")
        };
        if self.den.degree() == Some(0) {
            write!(f, "{}", show(&self.num))
        } else {
            write!(f, "({})/({})", show(&self.num), show(&self.den))
        }
    }
}

impl Zero for UniRatFun {
    fn zero() -> Self {
        Self::constant(Q::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for UniRatFun {
    fn one() -> Self {
        Self::constant(Q::one())
    }
}

impl Add for UniRatFun {
    type Output = UniRatFun;
    fn add(self, rhs: Self) -> Self {
        let var = Self::join(self.var, rhs.var);
        if self.den == rhs.den {
            return Self::canonical(var, self.num.add(&rhs.num), self.den);
        }
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        Self::canonical(var, num, self.den.mul(&rhs.den))
    }
}

impl Sub for UniRatFun {
    type Output = UniRatFun;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for UniRatFun {
    type Output = UniRatFun;
    fn neg(self) -> Self {
        UniRatFun {
            var: self.var,
            num: self.num.neg(),
            den: self.den,
        }
    }
}

impl Mul for UniRatFun {
    type Output = UniRatFun;
    fn mul(self, rhs: Self) -> Self {
        let var = Self::join(self.var, rhs.var);
        Self::canonical(var, self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl Div for UniRatFun {
    type Output = UniRatFun;
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "division by the zero rational function");
        let var = Self::join(self.var, rhs.var);
        Self::canonical(var, self.num.mul(&rhs.den), self.den.mul(&rhs.num))
    }
}

impl Scalar for UniRatFun {
    fn from_q(q: Q) -> Self {
        Self::constant(q)
    }
}
