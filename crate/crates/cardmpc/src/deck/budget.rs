use serde::Serialize;

/// Running count of cards on the table, and the high-water mark.
///
/// The peak total is the cost metric every card-count claim is stated in:
/// the largest number of cards simultaneously in play at any point of a
/// protocol run. It never decreases.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CardBudget {
    clubs_in_play: usize,
    hearts_in_play: usize,
    peak_total: usize,
}

impl CardBudget {
    pub fn new() -> Self {
        Self::default()
    }

    /// Cards arrive on the table (staged inputs or supply draws).
    pub fn enter_play(&mut self, clubs: usize, hearts: usize) {
        self.clubs_in_play += clubs;
        self.hearts_in_play += hearts;
        self.peak_total = self.peak_total.max(self.total_in_play());
    }

    /// Cards leave the table. Panics on underflow, which would mean the
    /// simulator lost track of a card.
    pub fn leave_play(&mut self, clubs: usize, hearts: usize) {
        self.clubs_in_play = self
            .clubs_in_play
            .checked_sub(clubs)
            .expect("more clubs left play than entered");
        self.hearts_in_play = self
            .hearts_in_play
            .checked_sub(hearts)
            .expect("more hearts left play than entered");
    }

    pub fn clubs_in_play(&self) -> usize {
        self.clubs_in_play
    }

    pub fn hearts_in_play(&self) -> usize {
        self.hearts_in_play
    }

    pub fn total_in_play(&self) -> usize {
        self.clubs_in_play + self.hearts_in_play
    }

    pub fn peak_total(&self) -> usize {
        self.peak_total
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn peak_tracks_the_high_water_mark() {
        let mut budget = CardBudget::new();
        budget.enter_play(2, 4);
        assert_eq!(budget.peak_total(), 6);
        budget.leave_play(1, 3);
        assert_eq!(budget.total_in_play(), 2);
        assert_eq!(budget.peak_total(), 6);
        budget.enter_play(1, 2);
        assert_eq!(budget.peak_total(), 6);
        budget.enter_play(0, 2);
        assert_eq!(budget.peak_total(), 7);
    }

    #[test]
    #[should_panic(expected = "more clubs left play")]
    fn underflow_is_a_simulator_bug() {
        let mut budget = CardBudget::new();
        budget.enter_play(1, 0);
        budget.leave_play(2, 0);
    }
}
