use thiserror::Error;

use crate::multiset::{Multiset, Sym};

/// A parse failure with the position (line/column when known, else a byte
/// offset into the input) where it occurred.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{location}: {message}")]
pub struct ParseError {
    pub location: String,
    pub message: String,
}

impl ParseError {
    pub fn new(offset: usize, message: String) -> Self {
        ParseError {
            location: format!("offset {offset}"),
            message,
        }
    }

    pub fn at_line(line: usize, column: usize, message: String) -> Self {
        ParseError {
            location: format!("line {line}, column {column}"),
            message,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetError {
    #[error("unknown transition `{0}`")]
    UnknownTransition(Sym),
    #[error("unknown place `{0}`")]
    UnknownPlace(Sym),
    #[error("duplicate place `{0}`")]
    DuplicatePlace(Sym),
    #[error("duplicate transition `{0}`")]
    DuplicateTransition(Sym),
    #[error("name `{0}` uses a reserved polarity suffix (`+` or `-`)")]
    ReservedName(Sym),
    #[error("transition `{transition}` is not enabled at {marking}")]
    NotEnabled { transition: Sym, marking: Multiset },
    #[error("capacity {capacity} of place `{place}` is below its initial count {initial}")]
    CapacityExceeded {
        place: Sym,
        capacity: u64,
        initial: u64,
    },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("codomain {cod} does not match domain {dom}")]
    CodDomMismatch { cod: String, dom: String },
    #[error("invalid firing sequence: step {step} (`{transition}`) is not enabled")]
    InvalidSequence { step: usize, transition: Sym },
    #[error("interface mismatch: {0}")]
    InterfaceMismatch(String),
    #[error("malformed diagram: {0}")]
    Malformed(String),
    #[error(transparent)]
    Net(#[from] NetError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("presentations are not composable: {0}")]
    Mismatch(String),
    #[error("generator `{0}` has no image")]
    MissingImage(Sym),
    #[error("image of `{generator}` has the wrong boundary: {detail}")]
    Boundary { generator: Sym, detail: String },
    #[error("functor does not send generators to generators (`{0}`)")]
    NotGeneratorPreserving(Sym),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
}
