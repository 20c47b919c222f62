use thiserror::Error;

use crate::ltl::ParseError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("formula has {0} variables, table cap is {1}")]
    VariableCapExceeded(usize, usize),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("target `{0}` is not a result of the table")]
    TargetNotInTable(String),
    #[error("target `{0}` is not a result formula of the reduced table")]
    NotAReducedTarget(String),
    #[error("target `{0}` is not symmetric in the representatives of its equivalence class")]
    AsymmetricTarget(String),
    #[error("weights were computed under {found:?} counting, expected {expected:?}")]
    ModeMismatch {
        expected: crate::table::CountMode,
        found: crate::table::CountMode,
    },
    #[error("topology does not cover atoms: {0:?}")]
    IncompleteTopology(Vec<String>),
    #[error("invalid topology: {0}")]
    InvalidTopology(String),
    #[error("event for process `{process}` does not match its alphabet")]
    AlphabetMismatch { process: String },
    #[error("pattern class `{0}` has no template expressible in the formula grammar")]
    NotExpressible(String),
    #[error("not enough atoms for pattern `{class}`: need {needed}, have {available}")]
    NotEnoughAtoms {
        class: String,
        needed: usize,
        available: usize,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
