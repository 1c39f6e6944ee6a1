//! Orientation-free integer intervals `I(i,j)`.

use std::collections::BTreeSet;

/// The half-open range `[min(i,j), max(i,j))`; empty when `i == j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IntervalSet {
    lo: i64,
    hi: i64,
}

pub fn interval(i: i64, j: i64) -> IntervalSet {
    IntervalSet {
        lo: i.min(j),
        hi: i.max(j),
    }
}

impl IntervalSet {
    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, k: i64) -> bool {
        self.lo <= k && k < self.hi
    }

    pub fn iter(&self) -> std::ops::Range<i64> {
        self.lo..self.hi
    }

    pub fn shift(&self, k: i64) -> IntervalSet {
        IntervalSet {
            lo: self.lo + k,
            hi: self.hi + k,
        }
    }

    pub fn to_set(&self) -> BTreeSet<i64> {
        self.iter().collect()
    }
}

impl IntoIterator for IntervalSet {
    type Item = i64;
    type IntoIter = std::ops::Range<i64>;

    fn into_iter(self) -> Self::IntoIter {
        self.lo..self.hi
    }
}

/// `U ⊕ V = (U ∪ V) \ (U ∩ V)`.
pub fn symmetric_difference(u: &BTreeSet<i64>, v: &BTreeSet<i64>) -> BTreeSet<i64> {
    u.symmetric_difference(v).copied().collect()
}
