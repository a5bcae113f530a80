#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod decompose;
pub mod elementary;
pub mod error;
pub mod flat;
pub mod hermite;
pub mod straight;
pub mod tower;

pub use arith::{Constant, Element, Monomial, Polynomial, Var};
pub use error::CoreError;
pub use tower::{GeneratorKind, Tower};
