use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::matrix::CardMatrix;
use super::trace::{TraceEvent, VisibleTrace};
use super::DeckError;

/// A uniform distribution over hidden cyclic offsets.
///
/// A random cut rotates a single row of `length` cards; a pile-shifting
/// shuffle rotates the columns of a matrix, moving whole piles. Both have
/// support `{0, .., size-1}` with every offset equally likely, and both
/// are realized here as a column rotation (a cut is the one-row case).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "shuffle")]
pub enum ShuffleSpec {
    RandomCut { length: usize },
    PileShift { columns: usize },
}

impl ShuffleSpec {
    pub fn support_size(&self) -> usize {
        match *self {
            ShuffleSpec::RandomCut { length } => length,
            ShuffleSpec::PileShift { columns } => columns,
        }
    }

    fn fits(&self, matrix: &CardMatrix) -> bool {
        match *self {
            ShuffleSpec::RandomCut { length } => matrix.rows() == 1 && matrix.cols() == length,
            ShuffleSpec::PileShift { columns } => matrix.cols() == columns,
        }
    }
}

/// Where shuffle offsets come from.
///
/// `Seeded` draws each offset uniformly and independently from a
/// deterministic stream, so the same seed replays the same run.
/// `Enumerating` consumes one scripted offset per shuffle, which lets a
/// verifier walk every branch of a protocol; it is an error for a run to
/// perform more or fewer shuffles than the script provides.
#[derive(Clone, Debug)]
pub enum RandomSource {
    Seeded(Box<ChaCha8Rng>),
    Enumerating { script: Vec<usize>, cursor: usize },
}

impl RandomSource {
    pub fn seeded(seed: u64) -> Self {
        RandomSource::Seeded(Box::new(ChaCha8Rng::seed_from_u64(seed)))
    }

    pub fn scripted(script: impl Into<Vec<usize>>) -> Self {
        RandomSource::Enumerating { script: script.into(), cursor: 0 }
    }

    /// Draw the next offset from `{0, .., support-1}`.
    pub fn draw_offset(&mut self, support: usize) -> Result<usize, DeckError> {
        match self {
            RandomSource::Seeded(rng) => Ok(rng.gen_range(0..support)),
            RandomSource::Enumerating { script, cursor } => {
                let offset = *script
                    .get(*cursor)
                    .ok_or(DeckError::ScriptExhausted { consumed: *cursor })?;
                *cursor += 1;
                if offset >= support {
                    return Err(DeckError::OffsetOutOfSupport { offset, support });
                }
                Ok(offset)
            }
        }
    }

    /// Check that an enumerating script was consumed exactly.
    pub fn finish(&self) -> Result<(), DeckError> {
        match self {
            RandomSource::Seeded(_) => Ok(()),
            RandomSource::Enumerating { script, cursor } => {
                let leftover = script.len() - cursor;
                if leftover > 0 {
                    return Err(DeckError::ScriptLeftover { leftover });
                }
                Ok(())
            }
        }
    }
}

/// Draw a hidden offset and apply the shuffle. The trace records that the
/// shuffle happened, never which offset was chosen.
pub fn apply_shuffle(
    matrix: &mut CardMatrix,
    spec: ShuffleSpec,
    rng: &mut RandomSource,
    trace: &mut VisibleTrace,
) -> Result<(), DeckError> {
    if !spec.fits(matrix) {
        return Err(DeckError::ShuffleMismatch { rows: matrix.rows(), cols: matrix.cols() });
    }
    let offset = rng.draw_offset(spec.support_size())?;
    matrix.pile_shift(offset)?;
    trace.push(TraceEvent::Shuffled(spec));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deck::Sequence;

    fn one_club_matrix(cols: usize, club_at: usize) -> CardMatrix {
        CardMatrix::from_rows(vec![Sequence::encode_value(cols, club_at).unwrap()]).unwrap()
    }

    #[test]
    fn seeded_draws_are_reproducible() {
        let mut trace = VisibleTrace::new();
        let spec = ShuffleSpec::PileShift { columns: 6 };
        let mut first = one_club_matrix(6, 2);
        let mut second = first.clone();
        let mut rng1 = RandomSource::seeded(42);
        let mut rng2 = RandomSource::seeded(42);
        for _ in 0..10 {
            apply_shuffle(&mut first, spec, &mut rng1, &mut trace).unwrap();
            apply_shuffle(&mut second, spec, &mut rng2, &mut trace).unwrap();
        }
        assert_eq!(first, second);
    }

    #[test]
    fn scripted_offset_is_a_plain_pile_shift() {
        let mut trace = VisibleTrace::new();
        let mut shuffled = one_club_matrix(6, 1);
        let mut expected = shuffled.clone();
        let mut rng = RandomSource::scripted(vec![3]);
        apply_shuffle(
            &mut shuffled,
            ShuffleSpec::PileShift { columns: 6 },
            &mut rng,
            &mut trace,
        )
        .unwrap();
        expected.pile_shift(3).unwrap();
        assert_eq!(shuffled, expected);
        assert!(rng.finish().is_ok());
    }

    #[test]
    fn enumerating_all_offsets_covers_every_club_position() {
        for a in 0..6 {
            let mut positions: Vec<usize> = (0..6)
                .map(|r| {
                    let mut trace = VisibleTrace::new();
                    let mut m = one_club_matrix(6, a);
                    let mut rng = RandomSource::scripted(vec![r]);
                    apply_shuffle(
                        &mut m,
                        ShuffleSpec::PileShift { columns: 6 },
                        &mut rng,
                        &mut trace,
                    )
                    .unwrap();
                    m.row_sequence(0).decode_value().unwrap()
                })
                .collect();
            positions.sort_unstable();
            assert_eq!(positions, vec![0, 1, 2, 3, 4, 5], "a={a}");
        }
    }

    #[test]
    fn script_length_mismatches_are_errors() {
        let mut trace = VisibleTrace::new();
        let spec = ShuffleSpec::PileShift { columns: 4 };

        let mut m = one_club_matrix(4, 0);
        let mut short = RandomSource::scripted(Vec::new());
        assert_eq!(
            apply_shuffle(&mut m, spec, &mut short, &mut trace),
            Err(DeckError::ScriptExhausted { consumed: 0 })
        );

        let long = RandomSource::scripted(vec![1, 2]);
        assert_eq!(long.finish(), Err(DeckError::ScriptLeftover { leftover: 2 }));
    }

    #[test]
    fn scripted_offsets_must_fit_the_support() {
        let mut trace = VisibleTrace::new();
        let mut m = one_club_matrix(4, 0);
        let mut rng = RandomSource::scripted(vec![4]);
        assert_eq!(
            apply_shuffle(&mut m, ShuffleSpec::PileShift { columns: 4 }, &mut rng, &mut trace),
            Err(DeckError::OffsetOutOfSupport { offset: 4, support: 4 })
        );
    }

    #[test]
    fn random_cut_requires_a_single_row() {
        let mut trace = VisibleTrace::new();
        let rows = vec![
            Sequence::encode_value(5, 0).unwrap(),
            Sequence::encode_value(5, 1).unwrap(),
        ];
        let mut m = CardMatrix::from_rows(rows).unwrap();
        let mut rng = RandomSource::seeded(0);
        assert_eq!(
            apply_shuffle(&mut m, ShuffleSpec::RandomCut { length: 5 }, &mut rng, &mut trace),
            Err(DeckError::ShuffleMismatch { rows: 2, cols: 5 })
        );
    }
}
