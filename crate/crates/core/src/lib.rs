//! Finite alphabet iterative decoders (FAIDs) for column-weight-three LDPC
//! codes on the binary symmetric channel.
//!
//! The crate covers the decoders themselves ([`faid`]), the enumeration of
//! symmetric, ordered variable maps ([`space`]), trapping-set analysis under
//! initialization vectors ([`ts`]), decoder selection by domination
//! ([`selection`]), floating-point BP and min-sum baselines ([`reference`]),
//! and a simulation harness for frame error rates and error-pattern sweeps
//! ([`harness`]).

pub mod faid;
pub mod fixtures;
pub mod graph;
pub mod harness;
pub mod reference;
pub mod selection;
pub mod space;
pub mod ts;

use serde::Serialize;
use thiserror::Error;

pub use graph::{parse_alist, Code, TannerGraph};

/// Result of decoding one received word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecodeOutcome {
    pub bits: Vec<u8>,
    /// True iff decoding stopped on a zero syndrome.
    pub converged: bool,
    pub iterations: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecodeError {
    #[error(transparent)]
    Faid(#[from] faid::FaidError),
    #[error(transparent)]
    Length(#[from] graph::LengthMismatch),
}

/// Anything that maps a received hard-decision word to a decoded word.
pub trait BitDecoder: Sync {
    fn name(&self) -> String;

    fn decode_word(&self, graph: &TannerGraph, received: &[u8]) -> Result<DecodeOutcome, DecodeError>;
}
