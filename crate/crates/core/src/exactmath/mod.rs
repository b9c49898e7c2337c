//! Exact scalar and polynomial arithmetic.
//!
//! The scalar field is `Q`, represented by [`Rational`] (always reduced,
//! positive denominator, zero is `0/1` — the invariants are maintained by
//! the underlying `num-rational` type). On top of it sit dense-map
//! multivariate polynomials in graded-lex order, polynomial matrices with
//! fraction-free elimination, and rational linear forms.

mod linform;
mod matrix;
mod poly;

pub use linform::{linear_multiplicity, LinearForm, Multiplicity};
pub use matrix::{rational_rank, PolyMatrix};
pub use poly::{Monomial, MultiPoly};

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for the reduced fraction `p/q`. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

/// Errors raised by the exact-math kernel.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("operands have {0} and {1} variables")]
    MismatchedVariables(usize, usize),
    #[error("matrix is {0}x{1}, not square")]
    NonSquare(usize, usize),
    #[error("dimension {got} exceeds the cofactor-expansion limit {max}")]
    DimensionTooLarge { got: usize, max: usize },
    #[error("pfaffian requires even dimension, got {0}")]
    OddDimension(usize),
    #[error("matrix is not skew-symmetric with zero diagonal")]
    NotSkewSymmetric,
    #[error("point has length {got}, expected {expected}")]
    PointLengthMismatch { got: usize, expected: usize },
    #[error("linear form is zero")]
    ZeroLinearForm,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}
