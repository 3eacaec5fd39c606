use std::collections::HashSet;

use super::{Edge, EdgeLabel, Graph, NodeId, NodeStore, WitnessNode};
use crate::tba::{ClockSet, StateId, Tba};
use crate::zone::EdgeProfile;
use crate::Zone;

type Key = (StateId, Zone, ClockSet);

/// The zone graph extended with a guess `Y`: clocks that may still be 0.
///
/// An action edge requires every clock outside `Y` to be strictly positive,
/// and adds its resets to `Y`. A `tau` edge forgets the guess.
pub struct GuessingZoneGraph<'a> {
    tba: &'a Tba,
    max_constant: u32,
    store: NodeStore<Key>,
    roots: Vec<(StateId, Zone)>,
    allowed: Option<HashSet<(StateId, Zone)>>,
}

impl<'a> GuessingZoneGraph<'a> {
    pub fn new(tba: &'a Tba) -> Self {
        let z0 = Zone::origin(tba.clock_count());
        GuessingZoneGraph {
            tba,
            max_constant: tba.max_constant(),
            store: NodeStore::default(),
            roots: vec![(tba.init, z0)],
            allowed: None,
        }
    }

    /// The part of the guessing graph that projects into `allowed`, entered at
    /// `(q, Z, X)`.
    pub fn restricted(
        tba: &'a Tba,
        root: (StateId, Zone),
        allowed: HashSet<(StateId, Zone)>,
    ) -> Self {
        GuessingZoneGraph {
            tba,
            max_constant: tba.max_constant(),
            store: NodeStore::default(),
            roots: vec![root],
            allowed: Some(allowed),
        }
    }

    pub fn key(&self, n: NodeId) -> &Key {
        self.store.get(n)
    }

    pub fn tba(&self) -> &'a Tba {
        self.tba
    }
}

impl Graph for GuessingZoneGraph<'_> {
    fn roots(&mut self) -> Vec<NodeId> {
        let all = self.tba.all_clocks();
        let roots = self.roots.clone();
        roots
            .into_iter()
            .map(|(q, z)| self.store.intern((q, z, all)))
            .collect()
    }

    fn successors(&mut self, n: NodeId) -> Vec<Edge> {
        let (q, z, y) = self.store.get(n).clone();
        let must_move = self.tba.all_clocks().difference(y);
        let mut out = Vec::new();
        for (idx, t) in self.tba.outgoing(q) {
            let Some(profile) = z.edge_profile(t) else {
                continue;
            };
            let feasible = z
                .up()
                .and_guard(&t.guard)
                .and_then(|f| f.and_positive(must_move))
                .is_some();
            if !feasible {
                continue;
            }
            let next = z
                .fire(t, self.max_constant)
                .expect("profile implies a successor");
            if let Some(allowed) = &self.allowed {
                if !allowed.contains(&(t.dst, next.clone())) {
                    continue;
                }
            }
            out.push(Edge {
                target: self.store.intern((t.dst, next, y.union(t.reset))),
                label: EdgeLabel::Action(idx),
                profile,
            });
        }
        if !y.is_empty() {
            out.push(Edge {
                target: self.store.intern((q, z, ClockSet::empty())),
                label: EdgeLabel::Tau,
                profile: EdgeProfile::tau(),
            });
        }
        out
    }

    fn is_accepting(&self, n: NodeId) -> bool {
        self.tba.is_accepting(self.store.get(n).0)
    }

    fn is_clear(&self, n: NodeId) -> bool {
        self.store.get(n).2.is_empty()
    }

    fn node(&self, n: NodeId) -> WitnessNode {
        let (state, zone, y) = self.store.get(n).clone();
        WitnessNode {
            state,
            zone,
            guess: Some(y),
        }
    }

    fn stored(&self) -> usize {
        self.store.len()
    }
}
