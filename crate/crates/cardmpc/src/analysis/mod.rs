//! Card counting and protocol verification.
//!
//! Two independent views of cost: closed-form counts per scheme and
//! protocol, and the peak measured by actually running the simulator.
//! Tests hold them equal. Verification walks every (input, offset-script)
//! branch for correctness against plain modular arithmetic, and compares
//! whole visible-trace multisets across secret inputs for security.
//!
//! The security criterion used here: for fixed public parameters, the
//! multiset of visible traces over the uniform offset enumeration must be
//! identical for every secret input. That is one strict reading of
//! "leaks nothing"; uniform shuffles make it checkable by enumeration.

mod counts;
mod tables;
mod verify;

pub use counts::{count_cards, simulate_mult_schedule, simulate_optimized_mult_schedule, CountModel, ScheduleStep};
pub use tables::{emit_tables, render_csv, render_text, CountTables, ModulusRow, SchemeCounts, TableCell, SCHEME_NAMES, TABLE_MODULI, TABLE_PROTOCOLS};
pub use verify::{
    chi_square_critical, script_shape, verify_correctness, verify_security, CheckResult,
    Counterexample, Distinguisher, OffsetScripts, VerificationReport, VerifyMode,
    DEFAULT_BRANCH_CAP, SAMPLE_SIGNIFICANCE,
};

use thiserror::Error;

use crate::encodings::EncodingError;
use crate::protocols::{Protocol, ProtocolError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("exhaustive mode needs {branches} branches, over the cap of {cap}; use sampled mode")]
    BranchCapExceeded { branches: u64, cap: u64 },
    #[error("no card count for {protocol} with the {scheme} scheme")]
    UnsupportedPair { protocol: Protocol, scheme: String },
    #[error("sampled security needs single-club reveals; check {0} exhaustively instead")]
    SampledSecurityUnsupported(Protocol),
    #[error(transparent)]
    Protocol(#[from] ProtocolError),
    #[error(transparent)]
    Encoding(#[from] EncodingError),
}
