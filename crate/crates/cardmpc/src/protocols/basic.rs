//! The sequence-level protocols: copy, addition, and multiplication on
//! one-club rows, plus the five-card trick they generalize.

use crate::deck::{CardSymbol, MoveTag, Sequence, ShuffleSpec, Slot, TraceEvent};

use super::{ProtocolError, Session};

impl Session {
    /// Duplicate a one-club row without revealing its value.
    ///
    /// 1. Reverse the tail of `a`, negating its value.
    /// 2. Stack it over two fresh zero rows as a 3 x n matrix.
    /// 3. Pile-shift by a hidden offset r; the rows now read -a+r, r, r.
    /// 4. Reveal row 0 and locate its club at column j = -a+r.
    /// 5. Shift all columns left by j and turn row 0 back down; the two
    ///    zero rows now both read r - (-a+r) = a.
    ///
    /// Row 0's cards are freed back to the supply, so the net cost is the
    /// second output's row, with one row of reusable extras live during
    /// the run: 3n cards at peak.
    pub fn copy_sequence(&mut self, a: Sequence) -> Result<(Sequence, Sequence), ProtocolError> {
        let n = a.len();
        let mut negated = a;
        self.reverse_tail_public(&mut negated)?;
        let row1 = self.draw_zero_row(n)?;
        let row2 = self.draw_zero_row(n)?;
        let mut matrix = self.build_matrix(vec![negated, row1, row2])?;
        self.shuffle(&mut matrix, ShuffleSpec::PileShift { columns: n })?;
        let j = self.reveal_single_club(&mut matrix, 0)?;
        matrix.shift_columns_left(j, &mut self.trace)?;
        matrix.turn_all_face_down(&mut self.trace);
        let first = matrix.row_sequence(1);
        let second = matrix.row_sequence(2);
        self.release_sequence(matrix.row_sequence(0));
        Ok((first, second))
    }

    /// Compute `a + b (mod n)` from two one-club rows, consuming both.
    ///
    /// Same skeleton as the copy: row 0 is the negated `a`, row 1 is `b`;
    /// after the hidden shift and the public correction, row 1 reads
    /// (b+r) - (-a+r) = a+b. No extra cards, so 2n at peak, and `a`'s
    /// cards are freed.
    pub fn add_sequences(&mut self, a: Sequence, b: Sequence) -> Result<Sequence, ProtocolError> {
        let n = a.len();
        if b.len() != n {
            return Err(ProtocolError::LengthMismatch(n, b.len()));
        }
        let mut negated = a;
        self.reverse_tail_public(&mut negated)?;
        let mut matrix = self.build_matrix(vec![negated, b])?;
        self.shuffle(&mut matrix, ShuffleSpec::PileShift { columns: n })?;
        let j = self.reveal_single_club(&mut matrix, 0)?;
        matrix.shift_columns_left(j, &mut self.trace)?;
        matrix.turn_all_face_down(&mut self.trace);
        let sum = matrix.row_sequence(1);
        self.release_sequence(matrix.row_sequence(0));
        Ok(sum)
    }

    /// Compute `a * b (mod n)` from two one-club rows, consuming both.
    ///
    /// Builds rows encoding every multiple 0, a, 2a, .., (n-1)a, stands
    /// them up as the columns of an (n+1) x n matrix under `b`, and lets a
    /// single pile shift plus one reveal select column `b` blindly:
    ///
    /// 1. For n >= 4, repeatedly copy the `a` row and the latest multiple
    ///    and add them, growing the chain one multiple per round.
    /// 2. For n >= 3, the (n-1)a row is a reversed copy of `a`.
    /// 3. A zero row from the supply completes the set.
    /// 4. Shuffle, reveal row 0 (the shifted `b`), and take the column
    ///    under its club.
    ///
    /// Everything except the selected column is freed at the end. Peak is
    /// n^2 + n cards, reached while the last copy runs (and again when
    /// the full matrix stands). The n = 2 case collapses to the classic
    /// six-card AND.
    pub fn mult_sequences(&mut self, a: Sequence, b: Sequence) -> Result<Sequence, ProtocolError> {
        let n = a.len();
        if b.len() != n {
            return Err(ProtocolError::LengthMismatch(n, b.len()));
        }
        // chain[k] encodes (k+1)*a
        let mut chain: Vec<Sequence> = vec![a];
        if n >= 4 {
            for i in 1..=(n - 3) {
                let first = chain.remove(0);
                let (first, first_copy) = self.copy_sequence(first)?;
                chain.insert(0, first);
                let ith = chain.remove(i - 1);
                let (ith, ith_copy) = self.copy_sequence(ith)?;
                chain.insert(i - 1, ith);
                let next = self.add_sequences(first_copy, ith_copy)?;
                chain.push(next);
            }
        }
        if n >= 3 {
            let first = chain.remove(0);
            let (first, mut negated) = self.copy_sequence(first)?;
            chain.insert(0, first);
            self.reverse_tail_public(&mut negated)?;
            chain.push(negated);
        }
        let zero = self.draw_zero_row(n)?;

        // Column l holds the row encoding l*a, standing vertically under b.
        let mut columns = vec![zero];
        columns.extend(chain);
        let column_slots: Vec<Vec<Slot>> = columns.into_iter().map(Sequence::into_slots).collect();
        let mut rows = Vec::with_capacity(n + 1);
        rows.push(b);
        for r in 0..n {
            rows.push(Sequence::from_slots(column_slots.iter().map(|col| col[r]).collect()));
        }
        let mut matrix = self.build_matrix(rows)?;
        self.shuffle(&mut matrix, ShuffleSpec::PileShift { columns: n })?;
        let j = self.reveal_single_club(&mut matrix, 0)?;
        self.trace.push(TraceEvent::PublicMove(MoveTag::SelectColumn { col: j }));
        let product = matrix.column_sequence(j, 1);

        let (total_clubs, total_hearts) = matrix.card_content();
        let (out_clubs, out_hearts) = product.card_content();
        self.release(total_clubs - out_clubs, total_hearts - out_hearts);
        Ok(product)
    }

    /// The five-card AND: lay out `a`, a helper club, and the swapped `b`,
    /// cut the row at a hidden offset, and reveal everything. The three
    /// clubs end up cyclically adjacent exactly when a = b = 1; which
    /// rotation appears stays uniform either way, so nothing else leaks.
    /// All five cards go back to the supply.
    pub fn five_card_trick(&mut self, a: Sequence, b: Sequence) -> Result<bool, ProtocolError> {
        if a.len() != 2 || b.len() != 2 {
            return Err(ProtocolError::FiveCardTrickNeedsBits);
        }
        self.draw(1, 0)?;
        let helper = Slot::face_down(CardSymbol::Club);

        let mut b_slots = b.into_slots();
        b_slots.swap(0, 1);
        self.trace.push(TraceEvent::PublicMove(MoveTag::SwapPair));

        let mut slots = a.into_slots();
        slots.push(helper);
        slots.extend(b_slots);
        let mut matrix = self.build_matrix(vec![Sequence::from_slots(slots)])?;
        self.shuffle(&mut matrix, ShuffleSpec::RandomCut { length: 5 })?;
        let symbols = matrix.turn_over_row(0, &mut self.trace)?;

        let hearts: Vec<usize> = symbols
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == CardSymbol::Heart)
            .map(|(i, _)| i)
            .collect();
        if hearts.len() != 2 {
            return Err(ProtocolError::MalformedReveal { clubs: 5 - hearts.len() });
        }
        let gap = hearts[1] - hearts[0];
        let result = gap == 1 || gap == 4;

        let (clubs, hearts) = matrix.card_content();
        self.release(clubs, hearts);
        Ok(result)
    }
}
