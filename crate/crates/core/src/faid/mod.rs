//! Finite alphabet iterative decoders for column-weight-three codes.
//!
//! A decoder is the 4-tuple of message alphabet, channel values `{+C, -C}`,
//! variable-node map and check-node map. The check map is fixed to the
//! min-sum rule ([`phi_c`]); decoders differ only in the variable map, held
//! as a [`VnMap`] table and optionally derived from a [`ClosedFormMap`].

mod alphabet;
mod closed;
mod decoder;
mod file;
mod lt;
mod map;
mod symbol;
pub mod tables;

use thiserror::Error;

pub use alphabet::{MessageAlphabet, DEFAULT_CHANNEL};
pub use closed::{ClosedFormMap, Omega};
pub use decoder::{decide, FaidDecoder, FaidSession, DEFAULT_MAX_ITERATIONS};
pub use file::{emit_faid, parse_faid, FaidFile};
pub use lt::{is_lt_representable, lt_representation, nlt_certificate, LtBinding, NltCertificate, MARGIN_TOLERANCE};
pub use map::{phi_c, MapKind, VnMap};
pub use symbol::{Channel, Symbol};

use crate::graph::LengthMismatch;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FaidError {
    #[error("invalid alphabet: {0}")]
    BadAlphabet(String),
    #[error("invalid table: {0}")]
    BadTable(String),
    #[error("closed-form parameters violate their constraints: {0}")]
    ClosedFormConstraint(String),
    #[error("check update needs at least one input message")]
    EmptyCheckInput,
    #[error("alphabet has {alphabet} levels but the map has {map}")]
    AlphabetMismatch { alphabet: usize, map: usize },
    #[error("map fails the {0} property")]
    NotClassA(&'static str),
    #[error("maximum iteration count must be positive")]
    ZeroIterations,
    #[error("variable {var} has degree {degree}; FAID decoding needs column weight three")]
    NotColumnWeightThree { var: usize, degree: usize },
    #[error("check {check} has fewer than two neighbors")]
    DegenerateCheck { check: usize },
    #[error("no edge between variable {var} and check {check}")]
    NoSuchEdge { var: usize, check: usize },
    #[error(transparent)]
    Length(#[from] LengthMismatch),
    #[error("FAID file, line {line}: {msg}")]
    Format { line: usize, msg: String },
}
