use serde::Serialize;

use super::cards::CardSymbol;
use super::shuffle::ShuffleSpec;

/// A deterministic table move that everyone watches happen.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "move")]
pub enum MoveTag {
    /// Reverse all but the leftmost card of a row.
    ReverseTail { len: usize },
    /// Swap the two cards of a pair commitment.
    SwapPair,
    /// Collect sequences into a rows x cols layout.
    BuildMatrix { rows: usize, cols: usize },
    /// Move every column `l` to column `l - by` (mod cols).
    ShiftColumnsLeft { by: usize },
    /// Turn all face-up cards back face-down.
    TurnFaceDown,
    /// Pick one column out of the layout.
    SelectColumn { col: usize },
}

/// One observer-visible event.
///
/// A `Shuffled` event never carries the chosen offset, and a `Revealed`
/// event only ever lists symbols of cards that were turned face-up; both
/// facts are structural, not policed at runtime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "payload")]
pub enum TraceEvent {
    Shuffled(ShuffleSpec),
    Revealed { positions: Vec<usize>, symbols: Vec<CardSymbol> },
    PublicMove(MoveTag),
}

#[derive(Serialize)]
struct TraceRecord<'a> {
    step: usize,
    #[serde(flatten)]
    event: &'a TraceEvent,
}

/// Everything an observer sees during a protocol run, in order.
///
/// Two runs are indistinguishable to an observer exactly when their
/// visible traces are equal, which makes the serialized trace the object
/// that security verification compares.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VisibleTrace {
    events: Vec<TraceEvent>,
}

impl VisibleTrace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, event: TraceEvent) {
        self.events.push(event);
    }

    pub fn events(&self) -> &[TraceEvent] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// One JSON record per event, with fields `step`, `kind`, `payload`.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for (step, event) in self.events.iter().enumerate() {
            let record = TraceRecord { step, event };
            out.push_str(&serde_json::to_string(&record).expect("trace events serialize"));
            out.push('\n');
        }
        out
    }

    /// The same records as [`Self::to_jsonl`], as JSON values.
    pub fn to_json_records(&self) -> Vec<serde_json::Value> {
        self.events
            .iter()
            .enumerate()
            .map(|(step, event)| {
                serde_json::to_value(TraceRecord { step, event }).expect("trace events serialize")
            })
            .collect()
    }

    /// Canonical form used for comparing whole traces.
    pub fn canonical(&self) -> String {
        self.to_jsonl()
    }

    /// Short stable digest for reports.
    pub fn digest(&self) -> String {
        use std::hash::{DefaultHasher, Hash, Hasher};
        let mut hasher = DefaultHasher::new();
        self.canonical().hash(&mut hasher);
        format!("{:016x}", hasher.finish())
    }
}
