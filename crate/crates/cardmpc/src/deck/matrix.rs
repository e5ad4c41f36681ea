use super::cards::{CardSymbol, Face, Sequence, Slot};
use super::trace::{MoveTag, TraceEvent, VisibleTrace};
use super::DeckError;

/// A rectangular layout of cards. Row 0 is topmost, Column 0 leftmost.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CardMatrix {
    rows: usize,
    cols: usize,
    grid: Vec<Slot>, // row-major
}

impl CardMatrix {
    /// Build a matrix from top to bottom. Needs at least one row of at
    /// least two columns, all rows the same length.
    pub fn from_rows(rows: Vec<Sequence>) -> Result<Self, DeckError> {
        let cols = match rows.first() {
            Some(r) => r.len(),
            None => return Err(DeckError::DegenerateMatrix),
        };
        if cols < 2 {
            return Err(DeckError::DegenerateMatrix);
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(DeckError::RaggedRows { row: i, expected: cols, got: row.len() });
            }
        }
        let nrows = rows.len();
        let mut grid = Vec::with_capacity(nrows * cols);
        for row in rows {
            grid.extend(row.into_slots());
        }
        Ok(CardMatrix { rows: nrows, cols, grid })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn slot(&self, row: usize, col: usize) -> Slot {
        self.grid[row * self.cols + col]
    }

    fn row_slots_mut(&mut self, row: usize) -> &mut [Slot] {
        let start = row * self.cols;
        &mut self.grid[start..start + self.cols]
    }

    /// Cyclically move Column `l` to Column `(l + offset) mod cols` in
    /// every row at once. Rows are never permuted.
    pub fn pile_shift(&mut self, offset: usize) -> Result<(), DeckError> {
        if offset >= self.cols {
            return Err(DeckError::ShiftOutOfRange { offset, cols: self.cols });
        }
        if offset == 0 {
            return Ok(());
        }
        for row in 0..self.rows {
            self.row_slots_mut(row).rotate_right(offset);
        }
        Ok(())
    }

    /// Public deterministic move: Column `l` goes to Column `l - by`
    /// (mod cols). Equivalent to a pile shift by `cols - by`, and recorded
    /// in the trace since everyone sees it happen.
    pub fn shift_columns_left(
        &mut self,
        by: usize,
        trace: &mut VisibleTrace,
    ) -> Result<(), DeckError> {
        if by >= self.cols {
            return Err(DeckError::ShiftOutOfRange { offset: by, cols: self.cols });
        }
        for row in 0..self.rows {
            self.row_slots_mut(row).rotate_left(by);
        }
        trace.push(TraceEvent::PublicMove(MoveTag::ShiftColumnsLeft { by }));
        Ok(())
    }

    /// Turn every card of a face-down row face-up at once, recording the
    /// revealed symbols. Positions in the event are flat slot indices.
    pub fn turn_over_row(
        &mut self,
        row: usize,
        trace: &mut VisibleTrace,
    ) -> Result<Vec<CardSymbol>, DeckError> {
        if row >= self.rows {
            return Err(DeckError::NoSuchRow(row));
        }
        let cols = self.cols;
        let slots = self.row_slots_mut(row);
        if slots.iter().any(|s| s.face == Face::Up) {
            return Err(DeckError::RowAlreadyFaceUp(row));
        }
        let mut symbols = Vec::with_capacity(cols);
        for slot in slots.iter_mut() {
            slot.face = Face::Up;
            symbols.push(slot.symbol);
        }
        let positions = (row * cols..row * cols + cols).collect();
        trace.push(TraceEvent::Revealed { positions, symbols: symbols.clone() });
        Ok(symbols)
    }

    /// Turn every face-up card in the matrix back face-down.
    pub fn turn_all_face_down(&mut self, trace: &mut VisibleTrace) {
        for slot in &mut self.grid {
            slot.face = Face::Down;
        }
        trace.push(TraceEvent::PublicMove(MoveTag::TurnFaceDown));
    }

    pub fn row_sequence(&self, row: usize) -> Sequence {
        let start = row * self.cols;
        Sequence::from_slots(self.grid[start..start + self.cols].to_vec())
    }

    /// Read a column top to bottom as a horizontal sequence, optionally
    /// skipping leading rows.
    pub fn column_sequence(&self, col: usize, from_row: usize) -> Sequence {
        let slots = (from_row..self.rows).map(|r| self.slot(r, col)).collect();
        Sequence::from_slots(slots)
    }

    /// (clubs, hearts) content of the whole layout.
    pub fn card_content(&self) -> (usize, usize) {
        let clubs = self.grid.iter().filter(|s| s.symbol == CardSymbol::Club).count();
        (clubs, self.grid.len() - clubs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// A matrix whose row `r`, column `c` slot is a club iff `c == marker[r]`,
    /// so club positions track where columns went.
    fn marked_matrix(cols: usize, markers: &[usize]) -> CardMatrix {
        let rows = markers
            .iter()
            .map(|&m| Sequence::encode_value(cols, m).unwrap())
            .collect();
        CardMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn pile_shift_moves_every_column_cyclically() {
        // 4x6 layout; after a shift by 4, the column that was at index 2
        // is back at index 0, i.e. header order 2,3,4,5,0,1.
        let mut m = marked_matrix(6, &[0, 1, 2, 3]);
        m.pile_shift(4).unwrap();
        for (row, original) in [0usize, 1, 2, 3].iter().enumerate() {
            assert_eq!(m.row_sequence(row).decode_value().unwrap(), (original + 4) % 6);
        }
        assert_eq!(m.slot(2, 0).symbol, CardSymbol::Club); // old column 2 leads
    }

    #[test]
    fn pile_shift_zero_is_identity() {
        let mut m = marked_matrix(5, &[3, 1]);
        let before = m.clone();
        m.pile_shift(0).unwrap();
        assert_eq!(m, before);
    }

    #[test]
    fn pile_shift_inverse_restores_layout() {
        for r in 0..6 {
            let mut m = marked_matrix(6, &[2, 5, 0]);
            let before = m.clone();
            m.pile_shift(r).unwrap();
            m.pile_shift((6 - r) % 6).unwrap();
            assert_eq!(m, before, "r={r}");
        }
    }

    #[test]
    fn pile_shift_group_law_small() {
        for r1 in 0..5 {
            for r2 in 0..5 {
                let mut a = marked_matrix(5, &[1, 4]);
                let mut b = a.clone();
                a.pile_shift(r1).unwrap();
                a.pile_shift(r2).unwrap();
                b.pile_shift((r1 + r2) % 5).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn shift_columns_left_brings_column_to_front() {
        let mut trace = VisibleTrace::new();
        let mut m = marked_matrix(6, &[2]);
        m.shift_columns_left(2, &mut trace).unwrap();
        assert_eq!(m.row_sequence(0).decode_value().unwrap(), 0);
        assert_eq!(trace.events().len(), 1);
    }

    #[test]
    fn shift_left_after_unknown_shift_recovers_original_column() {
        // Hide column b with a shift r, learn j = b + r, shift left by j:
        // column 0 must be the one that started at b.
        for b in 0..6 {
            for r in 0..6 {
                let mut trace = VisibleTrace::new();
                let mut m = marked_matrix(6, &[b]);
                m.pile_shift(r).unwrap();
                let j = m.row_sequence(0).decode_value().unwrap();
                assert_eq!(j, (b + r) % 6);
                m.shift_columns_left(j, &mut trace).unwrap();
                assert_eq!(m.row_sequence(0).decode_value().unwrap(), 0);
            }
        }
    }

    #[test]
    fn turn_over_row_reveals_only_that_row() {
        let mut trace = VisibleTrace::new();
        let mut m = marked_matrix(6, &[4, 1]);
        let symbols = m.turn_over_row(0, &mut trace).unwrap();
        assert_eq!(symbols.iter().filter(|s| **s == CardSymbol::Club).count(), 1);
        match trace.events().last().unwrap() {
            TraceEvent::Revealed { positions, symbols } => {
                assert_eq!(positions, &[0, 1, 2, 3, 4, 5]);
                assert_eq!(symbols.len(), 6);
            }
            other => panic!("expected a reveal, got {other:?}"),
        }
        // second row untouched and still face-down
        assert!(m.row_sequence(1).all_face_down());
    }

    #[test]
    fn turn_over_row_rejects_face_up_rows() {
        let mut trace = VisibleTrace::new();
        let mut m = marked_matrix(4, &[0]);
        m.turn_over_row(0, &mut trace).unwrap();
        assert_eq!(m.turn_over_row(0, &mut trace), Err(DeckError::RowAlreadyFaceUp(0)));
    }

    #[test]
    fn operations_conserve_card_content() {
        let mut trace = VisibleTrace::new();
        let mut m = marked_matrix(6, &[0, 3, 5]);
        let content = m.card_content();
        m.pile_shift(4).unwrap();
        m.turn_over_row(1, &mut trace).unwrap();
        m.shift_columns_left(3, &mut trace).unwrap();
        m.turn_all_face_down(&mut trace);
        assert_eq!(m.card_content(), content);
    }
}
