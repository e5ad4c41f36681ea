//! Physical-layer model of a card table.
//!
//! Everything here is mechanical: cards with two symbols and a face
//! orientation, rows and matrices of them, cyclic shuffles, reveals, and
//! the observer-visible trace those moves generate. No encoding scheme or
//! protocol logic lives at this layer.
//!
//! Positions are 0-indexed left to right throughout. Face-down symbols
//! never appear in a [`VisibleTrace`]; the only way a symbol enters the
//! trace is by turning the card face-up.

mod budget;
mod cards;
mod matrix;
mod shuffle;
mod trace;

pub use budget::CardBudget;
pub use cards::{CardSymbol, Face, Sequence, Slot};
pub use matrix::CardMatrix;
pub use shuffle::{apply_shuffle, RandomSource, ShuffleSpec};
pub use trace::{MoveTag, TraceEvent, VisibleTrace};

use thiserror::Error;

/// Errors raised by the physical layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeckError {
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(usize),
    #[error("value {value} is out of range for modulus {modulus}")]
    ValueOutOfRange { value: usize, modulus: usize },
    #[error("sequence of length {0} is too short to reverse")]
    SequenceTooShort(usize),
    #[error("sequence holds {clubs} clubs, a valid encoding has exactly one")]
    MalformedEncoding { clubs: usize },
    #[error("matrix rows must all have length {expected}, row {row} has {got}")]
    RaggedRows { row: usize, expected: usize, got: usize },
    #[error("matrix needs at least one row and two columns")]
    DegenerateMatrix,
    #[error("row {0} does not exist")]
    NoSuchRow(usize),
    #[error("row {0} is already face-up")]
    RowAlreadyFaceUp(usize),
    #[error("shift offset {offset} is out of range for {cols} columns")]
    ShiftOutOfRange { offset: usize, cols: usize },
    #[error("shuffle spec does not fit a {rows}x{cols} layout")]
    ShuffleMismatch { rows: usize, cols: usize },
    #[error("offset script exhausted after {consumed} draws")]
    ScriptExhausted { consumed: usize },
    #[error("offset script has {leftover} unused entries")]
    ScriptLeftover { leftover: usize },
    #[error("scripted offset {offset} is outside the shuffle support of size {support}")]
    OffsetOutOfSupport { offset: usize, support: usize },
}
