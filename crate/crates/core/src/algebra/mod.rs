//! Exact arithmetic substrate: rationals, bivariate polynomials, reduced
//! rational functions, truncated power series, vector fields and the
//! derivation `D₀ = A∂ₓ + B∂ᵧ`.

pub mod field;
pub mod gcd;
pub mod linalg;
pub mod modular;
pub mod parse;
pub mod poly;
pub mod rat;
pub mod ratfunc;
pub mod scalar;
pub mod series;
pub mod upoly;

use thiserror::Error;

pub use field::VectorField;
pub use gcd::gcd;
pub use parse::{parse_poly, ParseError};
pub use poly::{BiPoly, Monomial};
pub use rat::Rat;
pub use ratfunc::RatFunc;
pub use scalar::{Fp, Scalar};
pub use series::{series_eval, Series, SeriesError};

/// Errors of the arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("vector field has a zero component")]
    TrivialField,
    #[error("vector field components share the factor {0}")]
    NotCoprime(String),
    #[error("derivative order {0} is outside 1..=3")]
    InvalidOrder(usize),
}

/// `P / gcd(P, ∂ₓP, ∂ᵧP)`: the product of the distinct irreducible factors
/// of `p`, in primitive integer form.
pub fn squarefree_part(p: &BiPoly) -> Result<BiPoly, AlgebraError> {
    gcd::squarefree_part(p).ok_or(AlgebraError::ZeroPolynomial)
}
