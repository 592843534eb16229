//! Polynomial approximation of rational Bézier curves.
//!
//! A rational Bézier curve is approximated by a polynomial Bézier curve of
//! any degree that matches the source's derivatives up to order `r` at
//! `t = 0` and order `s` at `t = 1`. The free part of the approximant is
//! expanded in weighted Jacobi polynomials and fitted by weighted least
//! squares; optional elevate-then-reduce refinement and error reporting
//! (a-priori bound, same-parameter error, discrete Hausdorff distance)
//! complete the pipeline.

// `!(x > 0.0)` is used on purpose so NaN is rejected; index loops mirror the formulas.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod accuracy;
pub mod basis;
pub mod continuity;
pub mod curves;
pub mod error;
pub mod io;
pub mod pipeline;
pub mod quadrature;
pub mod solver;

pub use error::{Error, Result};
