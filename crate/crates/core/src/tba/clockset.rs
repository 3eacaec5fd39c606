use std::fmt;

use super::ClockId;

/// A set of clocks packed into a bitmask (bit `i` is `ClockId(i)`).
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClockSet(u64);

impl ClockSet {
    /// Clock ids 1..=63 fit; bit 0 belongs to the reference clock and is never set.
    pub const CAPACITY: usize = 63;

    pub const fn empty() -> Self {
        ClockSet(0)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(c: ClockId) -> Self {
        ClockSet(1 << c.0)
    }

    pub fn contains(self, c: ClockId) -> bool {
        self.0 & (1 << c.0) != 0
    }

    pub fn insert(&mut self, c: ClockId) {
        self.0 |= 1 << c.0;
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: ClockSet) -> ClockSet {
        ClockSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ClockSet) -> ClockSet {
        ClockSet(self.0 & other.0)
    }

    pub fn difference(self, other: ClockSet) -> ClockSet {
        ClockSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: ClockSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = ClockId> {
        (1..64)
            .filter(move |i| self.0 & (1u64 << i) != 0)
            .map(ClockId)
    }
}

impl FromIterator<ClockId> for ClockSet {
    fn from_iter<I: IntoIterator<Item = ClockId>>(iter: I) -> Self {
        let mut s = ClockSet::empty();
        for c in iter {
            s.insert(c);
        }
        s
    }
}

impl fmt::Debug for ClockSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|c| c.0)).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_algebra() {
        let a: ClockSet = [ClockId(1), ClockId(3)].into_iter().collect();
        let b = ClockSet::singleton(ClockId(3));
        assert!(b.is_subset(a));
        assert!(!a.is_subset(b));
        assert_eq!(a.difference(b), ClockSet::singleton(ClockId(1)));
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![ClockId(1), ClockId(3)]);
        assert_eq!(a.len(), 2);
    }
}
