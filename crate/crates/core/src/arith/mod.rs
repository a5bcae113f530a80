//! Exact arithmetic: rationals, sparse polynomials, canonical rational
//! functions, gcds, squarefree decomposition, resultants and linear solving.

pub mod element;
pub mod gcd;
pub mod linsolve;
pub mod poly;
pub mod resultant;
pub mod sqfree;
pub mod upoly;

/// An element of the constant field `Q`.
pub type Constant = num_rational::BigRational;

/// Index of a tower variable; `0` is the base variable.
pub type Var = usize;

pub use element::Element;
pub use gcd::{gcd, lcm, poly_gcd};
pub use linsolve::solve_linear_system;
pub use poly::{Monomial, Polynomial};
pub use resultant::{resultant, resultant_of_fractions};
pub use sqfree::{squarefree_decompose, SquarefreeDecomposition};
pub use upoly::{extended_euclid, UPoly};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("squarefree decomposition of the zero polynomial")]
    ZeroInput,
    #[error("gcd(a, b) does not divide c")]
    NotSolvable,
    #[error("resultant of two zero polynomials")]
    BothZero,
    #[error("input is not polynomial in the requested variable")]
    NotPolynomial,
}
