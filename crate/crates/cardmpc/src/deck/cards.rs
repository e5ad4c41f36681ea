use std::fmt;

use serde::Serialize;

use super::DeckError;

/// A card face: club or heart. Cards of the same symbol are physically
/// indistinguishable, so equality is by symbol alone and cards carry no
/// hidden identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CardSymbol {
    #[serde(rename = "C")]
    Club,
    #[serde(rename = "H")]
    Heart,
}

impl fmt::Display for CardSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CardSymbol::Club => write!(f, "C"),
            CardSymbol::Heart => write!(f, "H"),
        }
    }
}

/// Orientation of a card on the table. All backs look alike, so a
/// face-down card reveals nothing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Face {
    Up,
    Down,
}

/// One card in a layout: its symbol plus its current orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Slot {
    pub symbol: CardSymbol,
    pub face: Face,
}

impl Slot {
    pub fn face_down(symbol: CardSymbol) -> Self {
        Slot { symbol, face: Face::Down }
    }

    pub fn is_face_down(&self) -> bool {
        self.face == Face::Down
    }
}

/// An ordered row of cards, 0-indexed from the left.
///
/// The distinguished shape used by every encoding in this crate is the
/// one-club row: `modulus` face-down cards, all hearts except a single
/// club whose position is the encoded value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sequence {
    slots: Vec<Slot>,
}

impl Sequence {
    pub fn from_slots(slots: Vec<Slot>) -> Self {
        Sequence { slots }
    }

    /// Lay out `value` as a one-club row of `modulus` face-down cards:
    /// hearts everywhere except a club at position `value`.
    pub fn encode_value(modulus: usize, value: usize) -> Result<Self, DeckError> {
        if modulus < 2 {
            return Err(DeckError::ModulusTooSmall(modulus));
        }
        if value >= modulus {
            return Err(DeckError::ValueOutOfRange { value, modulus });
        }
        let slots = (0..modulus)
            .map(|i| {
                let symbol = if i == value { CardSymbol::Club } else { CardSymbol::Heart };
                Slot::face_down(symbol)
            })
            .collect();
        Ok(Sequence { slots })
    }

    /// Read the encoded value back: the position of the unique club.
    /// Errors unless the row holds exactly one club.
    pub fn decode_value(&self) -> Result<usize, DeckError> {
        let mut club_at = None;
        for (i, slot) in self.slots.iter().enumerate() {
            if slot.symbol == CardSymbol::Club {
                if club_at.is_some() {
                    return Err(DeckError::MalformedEncoding { clubs: self.club_count() });
                }
                club_at = Some(i);
            }
        }
        club_at.ok_or(DeckError::MalformedEncoding { clubs: 0 })
    }

    /// Reverse every card but the leftmost: the card at position `i`
    /// (for `i >= 1`) moves to position `len - i`. On a one-club row of
    /// length `n` encoding `a`, the result encodes `(n - a) mod n`.
    pub fn reverse_tail(&mut self) -> Result<(), DeckError> {
        if self.slots.len() < 2 {
            return Err(DeckError::SequenceTooShort(self.slots.len()));
        }
        self.slots[1..].reverse();
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn into_slots(self) -> Vec<Slot> {
        self.slots
    }

    pub fn club_count(&self) -> usize {
        self.slots.iter().filter(|s| s.symbol == CardSymbol::Club).count()
    }

    /// (clubs, hearts) card content, regardless of orientation.
    pub fn card_content(&self) -> (usize, usize) {
        let clubs = self.club_count();
        (clubs, self.slots.len() - clubs)
    }

    pub fn all_face_down(&self) -> bool {
        self.slots.iter().all(Slot::is_face_down)
    }

    /// Face-up view as a string like `"HHCH"`. Inspection helper for the
    /// harness; a real observer never sees face-down symbols.
    pub fn symbol_string(&self) -> String {
        self.slots.iter().map(|s| s.symbol.to_string()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(pattern: &str) -> Sequence {
        let slots = pattern
            .chars()
            .map(|c| match c {
                'C' => Slot::face_down(CardSymbol::Club),
                'H' => Slot::face_down(CardSymbol::Heart),
                _ => panic!("bad pattern char {c}"),
            })
            .collect();
        Sequence::from_slots(slots)
    }

    #[test]
    fn encode_places_single_club() {
        assert_eq!(Sequence::encode_value(4, 2).unwrap().symbol_string(), "HHCH");
        assert_eq!(Sequence::encode_value(2, 0).unwrap().symbol_string(), "CH");
        assert_eq!(Sequence::encode_value(6, 3).unwrap().symbol_string(), "HHHCHH");
    }

    #[test]
    fn encode_rejects_bad_inputs() {
        assert_eq!(
            Sequence::encode_value(4, 4),
            Err(DeckError::ValueOutOfRange { value: 4, modulus: 4 })
        );
        assert_eq!(Sequence::encode_value(1, 0), Err(DeckError::ModulusTooSmall(1)));
    }

    #[test]
    fn decode_reads_club_position() {
        assert_eq!(seq("HHCH").decode_value().unwrap(), 2);
        assert_eq!(seq("CH").decode_value().unwrap(), 0);
        assert_eq!(seq("HHHHHC").decode_value().unwrap(), 5);
    }

    #[test]
    fn decode_rejects_wrong_club_count() {
        assert_eq!(seq("HHHH").decode_value(), Err(DeckError::MalformedEncoding { clubs: 0 }));
        assert_eq!(seq("CCHH").decode_value(), Err(DeckError::MalformedEncoding { clubs: 2 }));
    }

    #[test]
    fn reverse_tail_negates_the_value() {
        // a = 0 is a fixed point
        let mut s = Sequence::encode_value(6, 0).unwrap();
        s.reverse_tail().unwrap();
        assert_eq!(s.decode_value().unwrap(), 0);

        // position 2 moves to 6 - 2 = 4
        let mut s = Sequence::encode_value(6, 2).unwrap();
        s.reverse_tail().unwrap();
        assert_eq!(s, Sequence::encode_value(6, 4).unwrap());
    }

    #[test]
    fn reverse_tail_is_an_involution() {
        let original = Sequence::encode_value(5, 3).unwrap();
        let mut s = original.clone();
        s.reverse_tail().unwrap();
        s.reverse_tail().unwrap();
        assert_eq!(s, original);
    }

    #[test]
    fn reverse_tail_needs_two_cards() {
        let mut s = seq("C");
        assert_eq!(s.reverse_tail(), Err(DeckError::SequenceTooShort(1)));
    }

    #[test]
    fn reverse_tail_matches_negation_for_all_small_moduli() {
        for n in 2..=9 {
            for a in 0..n {
                let mut s = Sequence::encode_value(n, a).unwrap();
                s.reverse_tail().unwrap();
                assert_eq!(s.decode_value().unwrap(), (n - a) % n, "n={n} a={a}");
            }
        }
    }
}
