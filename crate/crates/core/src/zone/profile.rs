use super::{Bound, BoundValue, Zone};
use crate::tba::{ClockId, ClockSet, Transition};

/// Clock facts about one symbolic edge, read off `up(Z) & guard` before the reset.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct EdgeProfile {
    /// Clocks with a finite upper bound on the edge.
    pub bounded: ClockSet,
    pub reset: ClockSet,
    /// Clocks that are at least 1 on the edge.
    pub lower1: ClockSet,
    /// Clocks forced to be exactly 0 on the edge.
    pub zero_checked: ClockSet,
    pub is_tau: bool,
}

impl EdgeProfile {
    pub fn tau() -> Self {
        EdgeProfile {
            is_tau: true,
            ..Default::default()
        }
    }

    pub fn from_slice<T: BoundValue>(slice: &Zone<T>, reset: ClockSet) -> Self {
        let mut p = EdgeProfile {
            reset,
            ..Default::default()
        };
        let minus_one = Bound::le(-T::one());
        for i in 1..slice.dim() {
            let x = ClockId(i);
            let hi = slice.get(i, 0);
            if hi.is_finite() {
                p.bounded.insert(x);
            }
            if hi <= Bound::zero() {
                p.zero_checked.insert(x);
            }
            if slice.get(0, i) <= minus_one {
                p.lower1.insert(x);
            }
        }
        p
    }
}

impl<T: BoundValue> Zone<T> {
    /// Profile of firing `t` from this zone, `None` when the guard is unsatisfiable.
    pub fn edge_profile(&self, t: &Transition) -> Option<EdgeProfile> {
        let slice = self.up().and_guard(&t.guard)?;
        Some(EdgeProfile::from_slice(&slice, t.reset))
    }

    /// Whether every pair of clocks is ordered: `x <= y` or `y <= x` holds
    /// throughout the zone.
    pub fn orders_clocks(&self) -> bool {
        let n = self.dim();
        (1..n).all(|i| (i + 1..n).all(|j| self.implies_le(i, j) || self.implies_le(j, i)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tba::{fixtures, AtomicConstraint, Guard, Rel};

    type Z = Zone<i32>;

    #[test]
    fn a1_edges() {
        let a = fixtures::a1();
        let z0 = Z::origin(1);
        let p = z0.edge_profile(&a.transitions[0]).unwrap();
        assert!(p.bounded.is_empty() && p.zero_checked.is_empty());
        assert_eq!(p.lower1, ClockSet::singleton(ClockId(1)));
        let z1 = z0.fire(&a.transitions[0], 1).unwrap();
        let q = z1.edge_profile(&a.transitions[1]).unwrap();
        let x = ClockSet::singleton(ClockId(1));
        assert_eq!((q.bounded, q.reset, q.lower1), (x, x, x));
        assert!(q.zero_checked.is_empty());
    }

    #[test]
    fn zero_check_detected() {
        let a = fixtures::a2();
        // after 0 -> 1 resetting x from the origin, y = x on the diagonal
        let z = Z::origin(2).fire(&a.transitions[0], 1).unwrap();
        let p = z.edge_profile(&a.transitions[2]).unwrap();
        assert!(p.zero_checked.contains(ClockId(2)));
        assert!(p.zero_checked.contains(ClockId(1)));
    }

    #[test]
    fn guard_that_empties_gives_none() {
        let t = Transition::new(0, 0).with_guard(Guard::new(vec![
            AtomicConstraint::new(ClockId(1), Rel::Eq, 1),
            AtomicConstraint::new(ClockId(2), Rel::Eq, 0),
        ]));
        assert!(Z::origin(2).edge_profile(&t).is_none());
    }

    #[test]
    fn ordering() {
        assert!(Z::origin(2).orders_clocks());
        assert!(Z::origin(3).up().orders_clocks());
        assert!(!Z::universe(2).orders_clocks());
        let t = Transition::new(0, 0).with_reset(ClockSet::singleton(ClockId(1)));
        let z = Z::origin(2).fire(&t, 1).unwrap();
        assert!(z.orders_clocks());
    }
}
