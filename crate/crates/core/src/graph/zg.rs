use super::{Edge, EdgeLabel, Graph, NodeId, NodeStore, WitnessNode};
use crate::tba::{StateId, Tba};
use crate::Zone;

/// The zone graph with max-constant extrapolation, rooted at the origin zone.
pub struct ZoneGraph<'a> {
    tba: &'a Tba,
    max_constant: u32,
    store: NodeStore<(StateId, Zone)>,
}

impl<'a> ZoneGraph<'a> {
    pub fn new(tba: &'a Tba) -> Self {
        ZoneGraph {
            tba,
            max_constant: tba.max_constant(),
            store: NodeStore::default(),
        }
    }

    pub fn tba(&self) -> &'a Tba {
        self.tba
    }

    pub fn max_constant(&self) -> u32 {
        self.max_constant
    }

    pub fn key(&self, n: NodeId) -> &(StateId, Zone) {
        self.store.get(n)
    }

    pub fn lookup(&self, q: StateId, z: &Zone) -> Option<NodeId> {
        self.store.lookup(&(q, z.clone()))
    }
}

impl Graph for ZoneGraph<'_> {
    fn roots(&mut self) -> Vec<NodeId> {
        let z0 = Zone::origin(self.tba.clock_count());
        vec![self.store.intern((self.tba.init, z0))]
    }

    fn successors(&mut self, n: NodeId) -> Vec<Edge> {
        let (q, z) = self.store.get(n).clone();
        let mut out = Vec::new();
        for (idx, t) in self.tba.outgoing(q) {
            let Some(profile) = z.edge_profile(t) else {
                continue;
            };
            let next = z
                .fire(t, self.max_constant)
                .expect("profile implies a successor");
            out.push(Edge {
                target: self.store.intern((t.dst, next)),
                label: EdgeLabel::Action(idx),
                profile,
            });
        }
        out
    }

    fn is_accepting(&self, n: NodeId) -> bool {
        self.tba.is_accepting(self.store.get(n).0)
    }

    fn is_clear(&self, _: NodeId) -> bool {
        false
    }

    fn node(&self, n: NodeId) -> WitnessNode {
        let (state, zone) = self.store.get(n).clone();
        WitnessNode {
            state,
            zone,
            guess: None,
        }
    }

    fn stored(&self) -> usize {
        self.store.len()
    }
}
