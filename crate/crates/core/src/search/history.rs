//! History-based pivot rules.
//!
//! Every rule keeps an array `B` indexed by flip direction: `up[i]` is `B(i+)`
//! (about `x_i = 1`) and `down[i]` is `B(i−)` (about `x_i = 0`). Rules that
//! track a single value per variable use `up` only. Among improving flips the
//! rule picks the smallest key; ties go to the lowest index.

use serde::{Deserialize, Serialize};

use crate::assignment::Assignment;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HistoryKind {
    /// Fewest flips in the chosen direction.
    Zadeh,
    /// Fewest flips of the variable in either direction.
    LeastUsedDirection,
    /// Variable flipped least recently.
    LeastRecentlyBasic,
    /// New value held least recently.
    LeastRecentlyEntered,
    /// New value held for the fewest iterations.
    LeastIterationsInBasis,
    /// First improving flip after the last used one in a fixed cyclic order.
    LeastRecentlyConsidered,
}

impl HistoryKind {
    pub const ALL: [HistoryKind; 6] = [
        HistoryKind::Zadeh,
        HistoryKind::LeastUsedDirection,
        HistoryKind::LeastRecentlyBasic,
        HistoryKind::LeastRecentlyEntered,
        HistoryKind::LeastIterationsInBasis,
        HistoryKind::LeastRecentlyConsidered,
    ];

    pub fn name(self) -> &'static str {
        match self {
            HistoryKind::Zadeh => "zadeh",
            HistoryKind::LeastUsedDirection => "least-used-direction",
            HistoryKind::LeastRecentlyBasic => "least-recently-basic",
            HistoryKind::LeastRecentlyEntered => "least-recently-entered",
            HistoryKind::LeastIterationsInBasis => "least-iterations-in-basis",
            HistoryKind::LeastRecentlyConsidered => "least-recently-considered",
        }
    }
}

/// The history array of one run.
///
/// For stamps, `-1` means "never". For `LeastRecentlyConsidered` the flips are
/// ordered `v_{2i} = (i ↦ 1)`, `v_{2i+1} = (i ↦ 0)`, and `B(v)` holds the position of
/// `v` in the cyclic order that starts right after the last used flip (1-based).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistoryState {
    pub kind: HistoryKind,
    /// Iterations completed so far.
    pub iteration: i64,
    pub up: Vec<i64>,
    pub down: Vec<i64>,
}

impl HistoryState {
    pub fn new(kind: HistoryKind, x0: &Assignment) -> Self {
        let n = x0.len();
        let mut h = HistoryState {
            kind,
            iteration: 0,
            up: vec![0; n],
            down: vec![0; n],
        };
        match kind {
            HistoryKind::Zadeh | HistoryKind::LeastUsedDirection => {}
            HistoryKind::LeastRecentlyBasic | HistoryKind::LeastRecentlyEntered => {
                h.up.fill(-1);
                h.down.fill(-1);
                h.stamp(x0);
            }
            HistoryKind::LeastIterationsInBasis => h.count_held(x0),
            HistoryKind::LeastRecentlyConsidered => {
                for i in 0..n {
                    h.up[i] = 2 * i as i64 + 1;
                    h.down[i] = 2 * i as i64 + 2;
                }
            }
        }
        h
    }

    fn stamp(&mut self, x: &Assignment) {
        for i in 0..x.len() {
            if x.get(i) {
                self.up[i] = self.iteration;
            } else {
                self.down[i] = self.iteration;
            }
        }
    }

    fn count_held(&mut self, x: &Assignment) {
        for i in 0..x.len() {
            if x.get(i) {
                self.up[i] += 1;
            } else {
                self.down[i] += 1;
            }
        }
    }

    fn entry(&self, i: usize, to_one: bool) -> i64 {
        if to_one {
            self.up[i]
        } else {
            self.down[i]
        }
    }

    /// Key of flipping `i` away from its value in `x`; smaller is preferred.
    pub fn key(&self, x: &Assignment, i: usize) -> i64 {
        let to_one = !x.get(i);
        match self.kind {
            HistoryKind::LeastUsedDirection => self.up[i],
            // i last flipped right after it last held the value it would return to,
            // so "flipped least recently" and "new value held least recently" coincide
            _ => self.entry(i, to_one),
        }
    }

    /// Picks from `improving` (ascending) by smallest key.
    pub fn select(&self, x: &Assignment, improving: &[usize]) -> Option<usize> {
        improving
            .iter()
            .copied()
            .min_by_key(|&i| (self.key(x, i), i))
    }

    /// Records that `i` was flipped, producing `after`.
    pub fn record(&mut self, i: usize, after: &Assignment) {
        let to_one = after.get(i);
        self.iteration += 1;
        match self.kind {
            HistoryKind::Zadeh => {
                if to_one {
                    self.up[i] += 1;
                } else {
                    self.down[i] += 1;
                }
            }
            HistoryKind::LeastUsedDirection => self.up[i] += 1,
            HistoryKind::LeastRecentlyBasic | HistoryKind::LeastRecentlyEntered => {
                self.stamp(after)
            }
            HistoryKind::LeastIterationsInBasis => self.count_held(after),
            HistoryKind::LeastRecentlyConsidered => {
                let two_n = 2 * self.up.len() as i64;
                let used = self.entry(i, to_one);
                for b in self.up.iter_mut().chain(self.down.iter_mut()) {
                    *b = (*b - used - 1).rem_euclid(two_n) + 1;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(s: &str) -> Assignment {
        s.parse().unwrap()
    }

    #[test]
    fn fresh_history_prefers_lowest_index() {
        for kind in HistoryKind::ALL {
            let h = HistoryState::new(kind, &x("000"));
            assert_eq!(h.select(&x("000"), &[1, 2]), Some(1), "{kind:?}");
        }
    }

    #[test]
    fn zadeh_counts_directions() {
        let mut h = HistoryState::new(HistoryKind::Zadeh, &x("00"));
        h.record(0, &x("10"));
        assert_eq!((h.up[0], h.down[0]), (1, 0));
        // flipping 0 back down has never happened, so it ties with 1 going up
        assert_eq!(h.select(&x("10"), &[0, 1]), Some(0));
        assert_eq!(h.select(&x("00"), &[0, 1]), Some(1));
    }

    #[test]
    fn least_recently_considered_rotates() {
        let mut h = HistoryState::new(HistoryKind::LeastRecentlyConsidered, &x("00"));
        // order: (0↦1), (0↦0), (1↦1), (1↦0)
        assert_eq!((h.up.clone(), h.down.clone()), (vec![1, 3], vec![2, 4]));
        h.record(0, &x("10"));
        // used flip goes to the back; the next one becomes first
        assert_eq!((h.up.clone(), h.down.clone()), (vec![4, 2], vec![1, 3]));
        assert_eq!(h.select(&x("10"), &[0, 1]), Some(0));
        let mut ring: Vec<i64> = h.up.iter().chain(&h.down).copied().collect();
        ring.sort_unstable();
        assert_eq!(ring, vec![1, 2, 3, 4]);
    }

    #[test]
    fn stamps_and_counts() {
        let mut h = HistoryState::new(HistoryKind::LeastRecentlyBasic, &x("00"));
        assert_eq!((h.up.clone(), h.down.clone()), (vec![-1, -1], vec![0, 0]));
        h.record(1, &x("01"));
        assert_eq!((h.up.clone(), h.down.clone()), (vec![-1, 1], vec![1, 0]));
        // 1 went up last step; 0 has never been 1, so it is least recent
        assert_eq!(h.select(&x("01"), &[0, 1]), Some(0));
        let mut h = HistoryState::new(HistoryKind::LeastIterationsInBasis, &x("01"));
        h.record(0, &x("11"));
        assert_eq!((h.up.clone(), h.down.clone()), (vec![1, 2], vec![1, 0]));
    }
}
