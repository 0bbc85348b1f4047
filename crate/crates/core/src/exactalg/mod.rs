//! Exact arithmetic: rationals, univariate rational functions, sparse
//! matrices and fraction-free linear algebra.

pub mod linalg;
pub mod matrix;
pub mod ratfun;
pub mod scalar;

pub use linalg::{eigenprojectors, kernel, rank, solve_linear, Solution};
pub use matrix::MatrixOperator;
pub use ratfun::{Poly, UniRatFun, VarTag};
pub use scalar::{parse_q, q, qi, Scalar, Q};
