//! Identity testing and factor extraction for lacunary bivariate polynomials.
//!
//! Exponents are arbitrary-precision integers throughout; dense objects are
//! only materialised below explicit degree caps. The central tool is a
//! valuation bound for sums `sum_j a_j X^alpha_j (uX+v)^beta_j` that depends
//! only on the number of terms, which splits a lacunary input into pieces of
//! small degree that can be handled densely.
//!
//! Module map:
//! - [`coeffring`]: exact integers, rationals, `F_{p^s}`.
//! - [`poly`]: lacunary, binomial-expression and dense polynomials, the
//!   expansion oracle, Wronskians and the size measure.
//! - [`bounds`]: valuation and multiplicity bounds, the plateau refinement
//!   and the extremal family with its certificate check.
//! - [`gap`]: gap partitions and piece decompositions.
//! - [`pit`]: zero tests.
//! - [`factors`]: linear and multilinear factor extraction.

pub mod bounds;
pub mod coeffring;
pub mod error;
pub mod factors;
pub mod gap;
pub mod linalg;
pub mod pit;
pub mod poly;

pub use error::{Error, Result};
