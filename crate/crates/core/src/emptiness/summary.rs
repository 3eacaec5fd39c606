use crate::graph::{Graph, NodeId};
use crate::tba::ClockSet;
use crate::zone::EdgeProfile;

/// Facts accumulated over the nodes and traversed edges of a (partial) SCC.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SccSummary {
    pub accepting: bool,
    pub clear: bool,
    /// Clocks bounded from above on some edge.
    pub bounded: ClockSet,
    pub reset: ClockSet,
    /// Clocks that are at least 1 on some edge.
    pub lower1: ClockSet,
    /// Some edge forces a clock to 0.
    pub zero_check: bool,
    /// At least one edge has been merged in, so the component is a cycle.
    pub has_edge: bool,
}

impl SccSummary {
    pub fn of_node<G: Graph + ?Sized>(g: &G, n: NodeId) -> Self {
        SccSummary {
            accepting: g.is_accepting(n),
            clear: g.is_clear(n),
            ..Default::default()
        }
    }

    pub fn add_edge(&mut self, p: &EdgeProfile) {
        self.bounded = self.bounded.union(p.bounded);
        self.reset = self.reset.union(p.reset);
        self.lower1 = self.lower1.union(p.lower1);
        self.zero_check |= !p.zero_checked.is_empty();
        self.has_edge = true;
    }

    pub fn merge(&mut self, o: &SccSummary) {
        self.accepting |= o.accepting;
        self.clear |= o.clear;
        self.bounded = self.bounded.union(o.bounded);
        self.reset = self.reset.union(o.reset);
        self.lower1 = self.lower1.union(o.lower1);
        self.zero_check |= o.zero_check;
        self.has_edge |= o.has_edge;
    }

    /// Bounded clocks that are never reset.
    pub fn blocking(&self) -> ClockSet {
        self.bounded.difference(self.reset)
    }
}
