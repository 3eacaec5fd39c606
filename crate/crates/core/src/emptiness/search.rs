//! Iterative SCC-based search for accepting components (Couvreur's algorithm).

use super::summary::SccSummary;
use super::{Rule, SearchStats};
use crate::error::CheckError;
use crate::graph::{Edge, EdgeLabel, ExplicitGraph, Graph, NodeId, WitnessNode};
use crate::zone::EdgeProfile;

/// An accepting component together with how to reach it.
#[derive(Clone, Debug)]
pub struct Hit {
    pub rule: Rule,
    pub summary: SccSummary,
    /// The component; a witness cycle is drawn from its edges.
    pub component: ExplicitGraph,
    /// Local id of the component node reached by `stem`.
    pub entry: NodeId,
    /// Nodes from the search root up to (excluding) the entry, each with the
    /// label of the edge leaving it.
    pub stem: Vec<(WitnessNode, EdgeLabel)>,
}

pub struct Ctx {
    pub stats: SearchStats,
    pub max_nodes: Option<usize>,
}

impl Ctx {
    pub fn new(max_nodes: Option<usize>) -> Self {
        Ctx {
            stats: SearchStats::default(),
            max_nodes,
        }
    }
}

pub type Success<'s> = &'s dyn Fn(&SccSummary) -> Option<Rule>;
pub type OnMaximal<'s, G> =
    &'s mut dyn FnMut(&mut G, &[NodeId], &SccSummary, &mut Ctx) -> Result<Option<Hit>, CheckError>;

struct Root {
    num: usize,
    start: usize,
    summary: SccSummary,
    entering: Option<EdgeProfile>,
}

struct Frame {
    node: NodeId,
    edges: Vec<Edge>,
    next: usize,
}

const UNSEEN: usize = 0;

/// Explores `g` from its roots. `success` is tested on every partial SCC after
/// a merge; `on_maximal` gets each completed SCC (members start with its root)
/// and may find an accepting component inside it.
///
/// Only a `top` search contributes to the visit and edge counters.
pub fn search<G: Graph>(
    g: &mut G,
    ctx: &mut Ctx,
    top: bool,
    success: Success<'_>,
    on_maximal: OnMaximal<'_, G>,
) -> Result<Option<Hit>, CheckError> {
    let mut num: Vec<usize> = Vec::new();
    let mut done: Vec<bool> = Vec::new();
    let mut parent: Vec<Option<(NodeId, EdgeLabel)>> = Vec::new();
    let mut counter = 0usize;
    let mut roots: Vec<Root> = Vec::new();
    let mut active: Vec<NodeId> = Vec::new();
    let mut stack: Vec<Frame> = Vec::new();

    let grow = |num: &mut Vec<usize>, done: &mut Vec<bool>, parent: &mut Vec<_>, n: usize| {
        if n >= num.len() {
            num.resize(n + 1, UNSEEN);
            done.resize(n + 1, false);
            parent.resize(n + 1, None);
        }
    };

    for r in g.roots() {
        grow(&mut num, &mut done, &mut parent, r);
        if num[r] != UNSEEN {
            continue;
        }
        let mut pending: Option<(NodeId, Option<EdgeProfile>)> = Some((r, None));
        loop {
            if let Some((n, entering)) = pending.take() {
                counter += 1;
                num[n] = counter;
                active.push(n);
                roots.push(Root {
                    num: counter,
                    start: active.len() - 1,
                    summary: SccSummary::of_node(g, n),
                    entering,
                });
                let edges = g.successors(n);
                if top {
                    ctx.stats.nodes_visited += 1;
                    ctx.stats.edges_traversed += edges.len();
                }
                if let Some(limit) = ctx.max_nodes {
                    if g.stored() > limit {
                        return Err(CheckError::NodeLimit(limit));
                    }
                }
                stack.push(Frame {
                    node: n,
                    edges,
                    next: 0,
                });
            }
            let Some(frame) = stack.last_mut() else {
                break;
            };
            if frame.next < frame.edges.len() {
                let e = frame.edges[frame.next].clone();
                frame.next += 1;
                let src = frame.node;
                let w = e.target;
                grow(&mut num, &mut done, &mut parent, w);
                if num[w] == UNSEEN {
                    parent[w] = Some((src, e.label));
                    pending = Some((w, Some(e.profile)));
                } else if !done[w] {
                    let mut acc = SccSummary::default();
                    acc.add_edge(&e.profile);
                    while roots.last().expect("live node has a root").num > num[w] {
                        let t = roots.pop().expect("checked above");
                        acc.merge(&t.summary);
                        if let Some(p) = t.entering {
                            acc.add_edge(&p);
                        }
                    }
                    let top_root = roots.last_mut().expect("live node has a root");
                    top_root.summary.merge(&acc);
                    if let Some(rule) = success(&top_root.summary) {
                        let members = active[top_root.start..].to_vec();
                        let summary = top_root.summary;
                        let component = ExplicitGraph::induced(g, &members);
                        let stem = tree_path(g, &parent, members[0]);
                        return Ok(Some(Hit {
                            rule,
                            summary,
                            component,
                            entry: 0,
                            stem,
                        }));
                    }
                }
                continue;
            }
            let n = frame.node;
            stack.pop();
            if roots.last().map(|t| t.num) == Some(num[n]) {
                let t = roots.pop().expect("checked above");
                let members: Vec<NodeId> = active.drain(t.start..).collect();
                for &m in &members {
                    done[m] = true;
                }
                ctx.stats.scc_count += 1;
                if let Some(mut hit) = on_maximal(g, &members, &t.summary, ctx)? {
                    let mut stem = tree_path(g, &parent, members[0]);
                    stem.append(&mut hit.stem);
                    hit.stem = stem;
                    return Ok(Some(hit));
                }
            }
        }
    }
    Ok(None)
}

fn tree_path<G: Graph>(
    g: &G,
    parent: &[Option<(NodeId, EdgeLabel)>],
    to: NodeId,
) -> Vec<(WitnessNode, EdgeLabel)> {
    let mut out = Vec::new();
    let mut cur = to;
    while let Some((p, label)) = parent[cur] {
        out.push((g.node(p), label));
        cur = p;
    }
    out.reverse();
    out
}

/// No special handling of completed SCCs.
pub fn ignore_maximal<G>(
    _: &mut G,
    _: &[NodeId],
    _: &SccSummary,
    _: &mut Ctx,
) -> Result<Option<Hit>, CheckError> {
    Ok(None)
}
