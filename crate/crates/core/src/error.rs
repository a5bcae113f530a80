use thiserror::Error;

use crate::arith::{ArithError, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("variable t{0} is not declared in the tower")]
    UnknownVariable(Var),
    #[error("input uses t{found} but level {level} was requested")]
    LevelMismatch { level: usize, found: Var },
    #[error("generator t{index}: {reason}")]
    MalformedGenerator { index: usize, reason: &'static str },
    #[error("tower is not straight")]
    NotStraightTower,
    #[error("tower is not flat")]
    NotFlatTower,
    #[error("element is not t{0}-simple")]
    NotSimple(usize),
    #[error("elementary integrability needs logarithmic generators; t{0} is not one")]
    NonLogTower(usize),
    #[error("tower is classified {classification}, which is incompatible with the {mode} algorithm")]
    ModeIncompatible {
        classification: &'static str,
        mode: &'static str,
    },
    #[error(transparent)]
    Arith(#[from] ArithError),
}
