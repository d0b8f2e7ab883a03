//! Polynomial representations: lacunary bivariate, binomial expressions
//! `sum a_j X^alpha_j (uX^d + v)^beta_j`, dense uni- and bivariate.

pub mod binom;
pub mod bivariate;
pub mod dense;
pub mod lacunary;
pub mod size;
pub mod wronskian;

pub use binom::{expand_oracle, BinomExprPoly, DEFAULT_ORACLE_CAP};
pub use bivariate::DensePolyBi;
pub use dense::DensePoly;
pub use lacunary::{LacunaryPoly, LacunaryUni, Term};
pub use size::{binom_size, lacunary_size, SizeMeasure};
pub use wronskian::{wronskian, WRONSKIAN_MAX_FAMILY};
