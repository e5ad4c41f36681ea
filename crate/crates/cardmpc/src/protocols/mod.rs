//! Executable card protocols.
//!
//! A [`Session`] owns the shared table state for one protocol run: the
//! card supply, the running budget, the visible trace, and the offset
//! source. Protocols are session methods; composing them (the crt and
//! binary schemes run one sub-protocol per part) is just calling several
//! in sequence against the same session, which is exactly what makes the
//! card-reuse arguments measurable.
//!
//! Card accounting rules, applied uniformly:
//!
//! * input commitments are staged onto the table before the run starts;
//! * every extra card a protocol needs is drawn from the supply;
//! * cards freed mid-run go back to the supply and may be drawn again;
//! * the budget's peak is the most cards ever simultaneously on the table.
//!
//! The one deviation is the unoptimized crt multiplication, where the
//! remains of consumed input commitments are held on the table as dead
//! cards until the whole protocol ends instead of re-entering the supply.
//! Optimized mode returns them immediately, and the two-card difference
//! this makes for Z/6Z (16 down to 14) is the point of the optimization.

mod basic;
mod schemes;

use serde::Serialize;
use thiserror::Error;

use crate::deck::{
    apply_shuffle, CardBudget, CardMatrix, CardSymbol, DeckError, MoveTag, RandomSource, Sequence,
    ShuffleSpec, TraceEvent, VisibleTrace,
};
use crate::encodings::{Commitment, EncodingError, Scheme};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProtocolError {
    #[error("supply exhausted: need {need_clubs} clubs and {need_hearts} hearts, have {have_clubs} and {have_hearts}")]
    InsufficientSupply {
        need_clubs: usize,
        need_hearts: usize,
        have_clubs: usize,
        have_hearts: usize,
    },
    #[error("operand schemes do not match")]
    SchemeMismatch,
    #[error("operand lengths do not match: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("{protocol} is count-only for the {scheme} scheme: it runs through a general boolean-function protocol that this simulator does not model, so only its card count is available")]
    UnsupportedExecution { protocol: Protocol, scheme: &'static str },
    #[error("the five-card trick needs single-bit commitments (direct scheme, n = 2)")]
    FiveCardTrickNeedsBits,
    #[error("revealed row holds {clubs} clubs, expected exactly one")]
    MalformedReveal { clubs: usize },
    #[error("{protocol} takes {expected} inputs, got {got}")]
    WrongInputCount { protocol: Protocol, expected: usize, got: usize },
    #[error(transparent)]
    Deck(#[from] DeckError),
    #[error(transparent)]
    Encoding(#[from] EncodingError),
}

/// The protocols this crate can run or count cards for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Protocol {
    FiveCardTrick,
    Copy,
    Add,
    Mult,
}

impl Protocol {
    pub const ALL: [Protocol; 4] =
        [Protocol::FiveCardTrick, Protocol::Copy, Protocol::Add, Protocol::Mult];

    pub fn name(&self) -> &'static str {
        match self {
            Protocol::FiveCardTrick => "five-card-trick",
            Protocol::Copy => "copy",
            Protocol::Add => "add",
            Protocol::Mult => "mult",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Protocol::ALL.into_iter().find(|p| p.name() == name)
    }

    pub fn input_arity(&self) -> usize {
        match self {
            Protocol::Copy => 1,
            _ => 2,
        }
    }
}

impl std::fmt::Display for Protocol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A pool of spare cards protocols may draw from and return to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CardSupply {
    clubs: usize,
    hearts: usize,
}

impl CardSupply {
    pub fn new(clubs: usize, hearts: usize) -> Self {
        CardSupply { clubs, hearts }
    }

    /// A supply comfortably larger than any protocol under the given
    /// scheme can hold outstanding at once. Supply size never changes a
    /// measured peak; it only guards against runaway draws.
    pub fn generous_for(scheme: &Scheme) -> Self {
        let w = scheme.commitment_width() as usize;
        let cards = w * w + 4 * w + 8;
        CardSupply::new(cards, cards)
    }

    pub fn clubs(&self) -> usize {
        self.clubs
    }

    pub fn hearts(&self) -> usize {
        self.hearts
    }

    pub fn total(&self) -> usize {
        self.clubs + self.hearts
    }

    fn draw(&mut self, clubs: usize, hearts: usize) -> Result<(), ProtocolError> {
        if clubs > self.clubs || hearts > self.hearts {
            return Err(ProtocolError::InsufficientSupply {
                need_clubs: clubs,
                need_hearts: hearts,
                have_clubs: self.clubs,
                have_hearts: self.hearts,
            });
        }
        self.clubs -= clubs;
        self.hearts -= hearts;
        Ok(())
    }

    fn put(&mut self, clubs: usize, hearts: usize) {
        self.clubs += clubs;
        self.hearts += hearts;
    }
}

/// Table state shared by every protocol step of one run.
#[derive(Debug)]
pub struct Session {
    supply: CardSupply,
    rng: RandomSource,
    trace: VisibleTrace,
    budget: CardBudget,
}

impl Session {
    pub fn new(supply: CardSupply, rng: RandomSource) -> Self {
        Session { supply, rng, trace: VisibleTrace::new(), budget: CardBudget::new() }
    }

    /// Put an input commitment on the table. These cards come from the
    /// parties, not the supply, but they count toward the peak.
    pub fn stage(&mut self, commitment: &Commitment) {
        let (clubs, hearts) = commitment.card_content();
        self.budget.enter_play(clubs, hearts);
    }

    pub fn stage_sequence(&mut self, sequence: &Sequence) {
        let (clubs, hearts) = sequence.card_content();
        self.budget.enter_play(clubs, hearts);
    }

    pub fn trace(&self) -> &VisibleTrace {
        &self.trace
    }

    pub fn budget(&self) -> &CardBudget {
        &self.budget
    }

    pub fn supply(&self) -> &CardSupply {
        &self.supply
    }

    pub fn rng(&self) -> &RandomSource {
        &self.rng
    }

    pub fn into_parts(self) -> (VisibleTrace, CardBudget, CardSupply) {
        (self.trace, self.budget, self.supply)
    }

    /// Draw a fresh all-hearts-but-one-club row encoding zero.
    fn draw_zero_row(&mut self, n: usize) -> Result<Sequence, ProtocolError> {
        self.draw(1, n - 1)?;
        Ok(Sequence::encode_value(n, 0)?)
    }

    fn draw(&mut self, clubs: usize, hearts: usize) -> Result<(), ProtocolError> {
        self.supply.draw(clubs, hearts)?;
        self.budget.enter_play(clubs, hearts);
        Ok(())
    }

    fn release(&mut self, clubs: usize, hearts: usize) {
        self.budget.leave_play(clubs, hearts);
        self.supply.put(clubs, hearts);
    }

    fn release_sequence(&mut self, sequence: Sequence) {
        let (clubs, hearts) = sequence.card_content();
        self.release(clubs, hearts);
    }

    fn build_matrix(&mut self, rows: Vec<Sequence>) -> Result<CardMatrix, ProtocolError> {
        let matrix = CardMatrix::from_rows(rows)?;
        self.trace.push(TraceEvent::PublicMove(MoveTag::BuildMatrix {
            rows: matrix.rows(),
            cols: matrix.cols(),
        }));
        Ok(matrix)
    }

    fn shuffle(&mut self, matrix: &mut CardMatrix, spec: ShuffleSpec) -> Result<(), ProtocolError> {
        apply_shuffle(matrix, spec, &mut self.rng, &mut self.trace)?;
        Ok(())
    }

    /// Turn over a row and locate its single club. Anything but exactly
    /// one club means the table state was corrupted by the caller.
    fn reveal_single_club(
        &mut self,
        matrix: &mut CardMatrix,
        row: usize,
    ) -> Result<usize, ProtocolError> {
        let symbols = matrix.turn_over_row(row, &mut self.trace)?;
        let clubs = symbols.iter().filter(|s| **s == CardSymbol::Club).count();
        if clubs != 1 {
            return Err(ProtocolError::MalformedReveal { clubs });
        }
        Ok(symbols.iter().position(|s| *s == CardSymbol::Club).unwrap())
    }

    fn reverse_tail_public(&mut self, sequence: &mut Sequence) -> Result<(), ProtocolError> {
        sequence.reverse_tail()?;
        self.trace.push(TraceEvent::PublicMove(MoveTag::ReverseTail { len: sequence.len() }));
        Ok(())
    }
}

/// The record of one finished protocol run.
#[derive(Clone, Debug)]
pub struct ProtocolRun {
    pub protocol: Protocol,
    pub scheme: Scheme,
    /// Secret inputs, kept for harness checks only; nothing in the trace
    /// depends on them except through revealed symbols.
    pub inputs: Vec<u64>,
    pub outputs: Vec<Commitment>,
    /// The public boolean the five-card trick announces.
    pub revealed_result: Option<bool>,
    pub trace: VisibleTrace,
    pub budget: CardBudget,
}

impl ProtocolRun {
    pub fn output_values(&self) -> Result<Vec<u64>, EncodingError> {
        self.outputs.iter().map(Commitment::decode).collect()
    }

    pub fn peak_cards(&self) -> usize {
        self.budget.peak_total()
    }
}

/// Encode the inputs, stage them, run the protocol against a generous
/// supply, and package the result. An enumerating offset source must be
/// consumed exactly; leftover entries are an error.
pub fn run_protocol(
    protocol: Protocol,
    scheme: &Scheme,
    inputs: &[u64],
    rng: RandomSource,
    optimized: bool,
) -> Result<ProtocolRun, ProtocolError> {
    let expected = protocol.input_arity();
    if inputs.len() != expected {
        return Err(ProtocolError::WrongInputCount { protocol, expected, got: inputs.len() });
    }
    if protocol == Protocol::FiveCardTrick
        && *scheme != (Scheme::Direct { modulus: 2 })
    {
        return Err(ProtocolError::FiveCardTrickNeedsBits);
    }

    let commitments: Vec<Commitment> = inputs
        .iter()
        .map(|&a| scheme.encode(a))
        .collect::<Result<_, _>>()?;
    let input_content = commitments.iter().fold((0usize, 0usize), |(c, h), commitment| {
        let (cc, ch) = commitment.card_content();
        (c + cc, h + ch)
    });

    let mut session = Session::new(CardSupply::generous_for(scheme), rng);
    let supply_before = session.supply;
    for commitment in &commitments {
        session.stage(commitment);
    }

    let mut commitments = commitments.into_iter();
    let mut outputs = Vec::new();
    let mut revealed_result = None;
    match protocol {
        Protocol::Copy => {
            let (first, second) = session.copy_commitment(commitments.next().unwrap())?;
            outputs.push(first);
            outputs.push(second);
        }
        Protocol::Add => {
            let (a, b) = (commitments.next().unwrap(), commitments.next().unwrap());
            outputs.push(session.add_commitments(a, b)?);
        }
        Protocol::Mult => {
            let (a, b) = (commitments.next().unwrap(), commitments.next().unwrap());
            outputs.push(session.mult_commitments(a, b, optimized)?);
        }
        Protocol::FiveCardTrick => {
            let (a, b) = (commitments.next().unwrap(), commitments.next().unwrap());
            let a = a.into_parts().into_iter().next().unwrap();
            let b = b.into_parts().into_iter().next().unwrap();
            revealed_result = Some(session.five_card_trick(a, b)?);
        }
    }
    session.rng.finish()?;

    let (trace, budget, supply_after) = session.into_parts();

    let output_content = outputs.iter().fold((0usize, 0usize), |(c, h), commitment| {
        let (cc, ch) = commitment.card_content();
        (c + cc, h + ch)
    });
    // Cards drawn minus returned must equal the net content of outputs
    // over inputs, and nothing but the outputs may remain on the table.
    debug_assert_eq!(
        (
            supply_before.clubs as i64 - supply_after.clubs as i64,
            supply_before.hearts as i64 - supply_after.hearts as i64,
        ),
        (
            output_content.0 as i64 - input_content.0 as i64,
            output_content.1 as i64 - input_content.1 as i64,
        ),
        "supply conservation violated"
    );
    debug_assert_eq!(
        (budget.clubs_in_play(), budget.hearts_in_play()),
        output_content,
        "table should hold exactly the outputs after a run"
    );

    Ok(ProtocolRun {
        protocol,
        scheme: scheme.clone(),
        inputs: inputs.to_vec(),
        outputs,
        revealed_result,
        trace,
        budget,
    })
}
