//! Simulation, verification, and card counting for card-based secure
//! computation over Z/nZ.
//!
//! Values are committed as face-down rows of club/heart cards under one
//! of three schemes (direct one-club rows, binary digits, or residues
//! modulo coprime prime powers), and the copy, addition, and
//! multiplication protocols manipulate them with nothing beyond cyclic
//! shuffles, reveals, and public rearrangements. The crate measures what
//! each run costs in cards, checks outputs against plain modular
//! arithmetic on every shuffle branch, and compares visible traces across
//! secret inputs to confirm that runs leak nothing else.
//!
//! Layering, bottom up:
//!
//! * [`deck`] — cards, sequences, matrices, shuffles, and visible traces;
//! * [`encodings`] — the three commitment schemes and residue arithmetic;
//! * [`protocols`] — executable protocols with card-supply accounting;
//! * [`analysis`] — count formulas, schedule simulation, verification,
//!   and the comparison tables.

pub mod analysis;
pub mod deck;
pub mod encodings;
pub mod protocols;

pub use analysis::{
    count_cards, emit_tables, simulate_optimized_mult_schedule, verify_correctness,
    verify_security, AnalysisError, VerificationReport, VerifyMode, DEFAULT_BRANCH_CAP,
};
pub use deck::{CardBudget, CardSymbol, RandomSource, Sequence, VisibleTrace};
pub use encodings::{Commitment, CrtDecomposition, EncodingError, Scheme};
pub use protocols::{run_protocol, CardSupply, Protocol, ProtocolError, ProtocolRun, Session};
