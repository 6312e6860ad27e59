//! Exact arithmetic over `k = Q(a1, ..., ar)`.

pub mod factor;
pub mod gcd;
pub mod poly;
pub mod quotient;
pub mod ratfunc;
pub mod rational;
pub mod symbol;
pub mod upoly;

pub use factor::{factor_linear, squarefree_decompose, Factor, Factorization};
pub use gcd::gcd;
pub use poly::{Monomial, Poly};
pub use quotient::{QuotientElem, QuotientRing};
pub use ratfunc::RatFunc;
pub use rational::Rational;
pub use symbol::{Symbol, SymbolKind};
pub use upoly::{UniPoly, UniRat};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("substitution hits a pole")]
    PoleInSubstitution,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("not univariate in {0}")]
    NotUnivariate(String),
    #[error("bad modulus: {0}")]
    BadModulus(String),
}
