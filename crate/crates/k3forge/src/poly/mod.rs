//! Exact multivariate polynomials and rational functions over Q.

mod elim;
mod multipoly;
mod parse;
mod ratfun;
mod uni;

pub use elim::{discriminant_univariate, resultant};
pub use multipoly::{cmp_vars, MultiPoly, Scalar, MAX_TOTAL_DEGREE};
pub use ratfun::{reduce_double_cover, substitute, RationalFunction, RationalMap};
pub use uni::{gcd_free_basis, squarefree_part, GcdFreeBasis, UniPoly};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("total degree {0} exceeds the cap of {MAX_TOTAL_DEGREE}")]
    DegreeCap(u32),
    #[error("variable `{0}` is not covered by the map")]
    UnmappedVariable(String),
    #[error("cover polynomial contains the cover variable `{0}`")]
    MalformedCover(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("{0}")]
    Domain(String),
}

/// Rational from a pair of machine integers.
pub fn q(n: i64, d: i64) -> Scalar {
    Scalar::new(n.into(), d.into())
}

/// Integer as a rational.
pub fn qi(n: i64) -> Scalar {
    Scalar::from_integer(n.into())
}
