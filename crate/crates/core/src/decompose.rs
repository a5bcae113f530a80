//! Dispatch between the straight and flat decompositions.

use alloc::vec::Vec;
use core::fmt;

use crate::arith::Element;
use crate::error::CoreError;
use crate::flat::{flat_parts, AssociatedSequence};
use crate::hermite::hermite_reduce;
use crate::straight::straight_parts;
use crate::tower::{validate_tower, Classification, IntegrabilityOracle, Tower, Violation};

/// Requested algorithm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    #[default]
    Auto,
    Straight,
    Flat,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Auto => "auto",
            Mode::Straight => "straight",
            Mode::Flat => "flat",
        }
    }
}

/// Algorithm that produced a decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Straight,
    Flat,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Straight => "straight",
            Method::Flat => "flat",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `input = antiderivative' + simple + remainder`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub input: Element,
    pub antiderivative: Element,
    /// `t_n`-simple.
    pub simple: Element,
    /// `t_n`-straight or `t_n`-flat polynomial in `K_{n-1}[t_n]`.
    pub remainder: Element,
    pub method: Method,
    /// Present for flat decompositions.
    pub witness: Option<AssociatedSequence>,
}

impl Decomposition {
    /// `input` has an antiderivative in `K_n`.
    pub fn is_integrable(&self) -> bool {
        self.simple.is_zero() && self.remainder.is_zero()
    }

    /// Re-differentiates and compares with the input.
    pub fn verify(&self, tower: &Tower) -> Result<bool, CoreError> {
        let back = &(&tower.differentiate(&self.antiderivative)? + &self.simple) + &self.remainder;
        Ok(back == self.input)
    }
}

pub fn resolve_method(tower: &Tower, mode: Mode) -> Result<Method, CoreError> {
    let classification = tower.classification();
    let incompatible = || CoreError::ModeIncompatible {
        classification: classification.as_str(),
        mode: mode.as_str(),
    };
    match (mode, classification) {
        (Mode::Auto, Classification::Straight | Classification::Both) => Ok(Method::Straight),
        (Mode::Auto, Classification::Flat) => Ok(Method::Flat),
        (Mode::Straight, c) if c.is_straight() => Ok(Method::Straight),
        (Mode::Flat, c) if c.is_flat() => Ok(Method::Flat),
        _ => Err(incompatible()),
    }
}

pub fn decompose(tower: &Tower, f: &Element, mode: Mode) -> Result<Decomposition, CoreError> {
    tower.check_element(f)?;
    match resolve_method(tower, mode)? {
        Method::Straight => decompose_straight(tower, f),
        Method::Flat => decompose_flat(tower, f),
    }
}

pub fn decompose_straight(tower: &Tower, f: &Element) -> Result<Decomposition, CoreError> {
    let (antiderivative, simple, remainder) = straight_parts(tower, f)?;
    Ok(Decomposition {
        input: f.clone(),
        antiderivative,
        simple,
        remainder,
        method: Method::Straight,
        witness: None,
    })
}

pub fn decompose_flat(tower: &Tower, f: &Element) -> Result<Decomposition, CoreError> {
    let (antiderivative, simple, remainder, witness) = flat_parts(tower, f)?;
    Ok(Decomposition {
        input: f.clone(),
        antiderivative,
        simple,
        remainder,
        method: Method::Flat,
        witness: Some(witness),
    })
}

/// Decides in-field integrability with whichever decomposition the tower admits.
#[derive(Clone, Copy, Debug, Default)]
pub struct DecompositionOracle;

impl IntegrabilityOracle for DecompositionOracle {
    fn is_integrable(&self, tower: &Tower, f: &Element) -> Result<Option<bool>, CoreError> {
        if tower.height() == 0 {
            return Ok(Some(hermite_reduce(tower, f, 0)?.simple.is_zero()));
        }
        match decompose(tower, f, Mode::Auto) {
            Ok(d) => Ok(Some(d.is_integrable())),
            Err(CoreError::ModeIncompatible { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    }
}

/// Monomial check for every generator; empty when the tower is valid.
pub fn validate(tower: &Tower) -> Vec<Violation> {
    validate_tower(tower, &DecompositionOracle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::{GeneratorKind, ViolationReason};

    fn x() -> Element {
        Element::var(0)
    }

    #[test]
    fn validation() {
        let good = Tower::new([
            GeneratorKind::Log(x()),
            GeneratorKind::Primitive(Element::var(1).recip().unwrap()),
        ])
        .unwrap();
        assert!(validate(&good).is_empty());

        let integrable = Tower::new([GeneratorKind::Primitive(&x() * &Element::from_int(2))]).unwrap();
        assert_eq!(
            validate(&integrable)[0].reason,
            ViolationReason::IntegrableDerivative
        );

        let repeated = Tower::new([
            GeneratorKind::Log(x()),
            GeneratorKind::Primitive(x().recip().unwrap()),
        ])
        .unwrap();
        let v = validate(&repeated);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].index, 2);
    }

    #[test]
    fn mode_mismatch() {
        let flat = Tower::new([
            GeneratorKind::Log(x()),
            GeneratorKind::Log(&x() + &Element::one()),
        ])
        .unwrap();
        assert!(matches!(
            decompose(&flat, &x(), Mode::Straight),
            Err(CoreError::ModeIncompatible { .. })
        ));
        assert_eq!(decompose(&flat, &x(), Mode::Auto).unwrap().method, Method::Flat);
    }

    #[test]
    fn zero_input() {
        let d = decompose(&Tower::base(), &Element::zero(), Mode::Auto).unwrap();
        assert!(d.is_integrable());
        assert!(d.antiderivative.is_zero());
    }
}
