//! Exact verification of the `(gl_k, gl_n)`-duality between
//! Knizhnik–Zamolodchikov and dynamical operators on the space of polynomials
//! in `k·n` anticommuting variables.
//!
//! The crate is layered bottom-up:
//!
//! * [`exterior`]: Grassmann monomials, wedge and derivation with signs.
//! * [`exactalg`]: exact rationals, rational functions, sparse matrices.
//! * [`representation`]: the commuting `gl_k` and `gl_n` actions.
//! * [`operators`]: KZ, DD, qKZ and qDD operators, R-matrices, B-series.
//! * [`duality`]: the verification harness and its reports.
//! * [`cli`]: the `kzdual` command line.



pub mod error;
pub mod exactalg;
pub mod exterior;
pub mod cli;
pub mod duality;
pub mod operators;
pub mod representation;



pub use error::{Error, Result};
