//! Symbolic state spaces explored on the fly.
//!
//! Nodes are interned into dense ids as they are discovered, so a node id is
//! stable for the lifetime of a graph value and `stored()` counts every node
//! generated so far.

mod dot;
mod explicit;
mod gzg;
mod zg;

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

pub use dot::to_dot;
pub use explicit::ExplicitGraph;
pub use gzg::GuessingZoneGraph;
pub use zg::ZoneGraph;

use crate::tba::{ClockSet, StateId, Tba};
use crate::zone::EdgeProfile;
use crate::Zone;

pub type NodeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeLabel {
    /// Index into the automaton's transition list.
    Action(usize),
    Tau,
}

#[derive(Clone, Debug)]
pub struct Edge {
    pub target: NodeId,
    pub label: EdgeLabel,
    pub profile: EdgeProfile,
}

/// A node as reported in witnesses and exports. `guess` is `None` for plain
/// zone-graph nodes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WitnessNode {
    pub state: StateId,
    pub zone: Zone,
    pub guess: Option<ClockSet>,
}

impl WitnessNode {
    pub fn describe(&self, tba: &Tba) -> String {
        let mut s = format!(
            "({}, {}",
            tba.states[self.state],
            self.zone.describe(&tba.clocks)
        );
        if let Some(g) = self.guess {
            s.push_str(", ");
            s.push_str(&tba.clockset_string(g));
        }
        s.push(')');
        s
    }
}

pub trait Graph {
    fn roots(&mut self) -> Vec<NodeId>;
    fn successors(&mut self, n: NodeId) -> Vec<Edge>;
    fn is_accepting(&self, n: NodeId) -> bool;
    /// Whether the node carries an empty guess. Always false without guesses.
    fn is_clear(&self, n: NodeId) -> bool;
    fn node(&self, n: NodeId) -> WitnessNode;
    /// Number of distinct nodes generated so far.
    fn stored(&self) -> usize;
}

/// Interning table from node keys to dense ids.
#[derive(Clone, Debug)]
pub struct NodeStore<K> {
    index: HashMap<K, NodeId>,
    keys: Vec<K>,
}

impl<K: Hash + Eq + Clone> Default for NodeStore<K> {
    fn default() -> Self {
        NodeStore {
            index: HashMap::new(),
            keys: Vec::new(),
        }
    }
}

impl<K: Hash + Eq + Clone> NodeStore<K> {
    pub fn intern(&mut self, k: K) -> NodeId {
        if let Some(&id) = self.index.get(&k) {
            return id;
        }
        let id = self.keys.len();
        self.index.insert(k.clone(), id);
        self.keys.push(k);
        id
    }

    pub fn lookup(&self, k: &K) -> Option<NodeId> {
        self.index.get(k).copied()
    }

    pub fn get(&self, id: NodeId) -> &K {
        &self.keys[id]
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }
}

/// Result of [`explore`]: every reachable node and edge.
#[derive(Clone, Debug)]
pub struct Explored {
    pub order: Vec<NodeId>,
    pub edges: Vec<(NodeId, Edge)>,
}

/// Breadth-first exploration of everything reachable from the roots.
pub fn explore<G: Graph + ?Sized>(g: &mut G) -> Explored {
    let mut seen = std::collections::HashSet::new();
    let mut queue = VecDeque::new();
    let mut out = Explored {
        order: Vec::new(),
        edges: Vec::new(),
    };
    for r in g.roots() {
        if seen.insert(r) {
            queue.push_back(r);
        }
    }
    while let Some(n) = queue.pop_front() {
        out.order.push(n);
        for e in g.successors(n) {
            if seen.insert(e.target) {
                queue.push_back(e.target);
            }
            out.edges.push((n, e));
        }
    }
    out
}
