use std::collections::HashMap;

use super::{Edge, Graph, NodeId, WitnessNode};

/// A finite graph held in memory, typically a subgraph copied out of an
/// on-the-fly graph. `origin[i]` is the id node `i` had in its source graph.
#[derive(Clone, Debug, Default)]
pub struct ExplicitGraph {
    pub roots: Vec<NodeId>,
    pub edges: Vec<Vec<Edge>>,
    pub accepting: Vec<bool>,
    pub clear: Vec<bool>,
    pub nodes: Vec<WitnessNode>,
    pub origin: Vec<NodeId>,
}

impl ExplicitGraph {
    /// Copies the subgraph of `g` induced by `members` (ids of `g`). Every
    /// member is a root. Only edges staying inside `members` are kept.
    pub fn induced<G: Graph + ?Sized>(g: &mut G, members: &[NodeId]) -> Self {
        let local: HashMap<NodeId, NodeId> =
            members.iter().enumerate().map(|(i, &n)| (n, i)).collect();
        let mut out = ExplicitGraph {
            roots: (0..members.len()).collect(),
            origin: members.to_vec(),
            ..Default::default()
        };
        for &n in members {
            let edges = g
                .successors(n)
                .into_iter()
                .filter_map(|e| local.get(&e.target).map(|&t| Edge { target: t, ..e }))
                .collect();
            out.edges.push(edges);
            out.accepting.push(g.is_accepting(n));
            out.clear.push(g.is_clear(n));
            out.nodes.push(g.node(n));
        }
        out
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Keeps only the edges for which `keep` holds.
    pub fn retain_edges(&mut self, mut keep: impl FnMut(NodeId, &Edge) -> bool) {
        for (n, es) in self.edges.iter_mut().enumerate() {
            es.retain(|e| keep(n, e));
        }
    }
}

impl Graph for ExplicitGraph {
    fn roots(&mut self) -> Vec<NodeId> {
        self.roots.clone()
    }

    fn successors(&mut self, n: NodeId) -> Vec<Edge> {
        self.edges[n].clone()
    }

    fn is_accepting(&self, n: NodeId) -> bool {
        self.accepting[n]
    }

    fn is_clear(&self, n: NodeId) -> bool {
        self.clear[n]
    }

    fn node(&self, n: NodeId) -> WitnessNode {
        self.nodes[n].clone()
    }

    fn stored(&self) -> usize {
        self.nodes.len()
    }
}
