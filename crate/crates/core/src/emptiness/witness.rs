//! Symbolic lasso witnesses and an independent replay check.

use std::collections::VecDeque;
use std::fmt::Write;

use super::search::Hit;
use super::summary::SccSummary;
use super::Rule;
use crate::graph::{Edge, EdgeLabel, ExplicitGraph, NodeId, WitnessNode};
use crate::tba::{snz_transform, ClockId, ClockSet, Tba};
use crate::zone::EdgeProfile;
use crate::Zone;

/// A stem from the initial node into a cycle. `stem_labels[i]` leaves
/// `stem[i]` (the last one enters `cycle[0]`); `cycle_labels[i]` leaves
/// `cycle[i]` and the last one returns to `cycle[0]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lasso {
    pub stem: Vec<WitnessNode>,
    pub stem_labels: Vec<EdgeLabel>,
    pub cycle: Vec<WitnessNode>,
    pub cycle_labels: Vec<EdgeLabel>,
}

impl Lasso {
    pub fn render(&self, tba: &Tba) -> String {
        let label = |l: &EdgeLabel| match l {
            EdgeLabel::Tau => "tau".to_string(),
            EdgeLabel::Action(i) => tba.transitions[*i]
                .label
                .clone()
                .unwrap_or_else(|| format!("t{i}")),
        };
        let mut s = String::new();
        for (n, l) in self.stem.iter().zip(&self.stem_labels) {
            let _ = writeln!(s, "stem  {} --{}-->", n.describe(tba), label(l));
        }
        for (n, l) in self.cycle.iter().zip(&self.cycle_labels) {
            let _ = writeln!(s, "cycle {} --{}-->", n.describe(tba), label(l));
        }
        s
    }
}

enum Need {
    Node(fn(&ExplicitGraph, NodeId) -> bool),
    Edge(Box<dyn Fn(&Edge) -> bool>),
}

/// Turns a search hit into a lasso whose cycle meets the promise of `hit.rule`.
pub fn lasso_from_hit(hit: &Hit) -> Option<Lasso> {
    let g = restrict_for_rule(&hit.component, hit.rule, &hit.summary);
    let mut needs: Vec<Need> = vec![Need::Node(|g, n| g.accepting[n])];
    match hit.rule {
        Rule::GzgClear => needs.push(Need::Node(|g, n| g.clear[n])),
        Rule::LowerBound => {
            let x = hit
                .summary
                .lower1
                .intersection(hit.summary.reset)
                .iter()
                .find(|&x| {
                    let all = || g.edges.iter().flatten();
                    all().any(|e| e.profile.lower1.contains(x))
                        && all().any(|e| e.profile.reset.contains(x))
                })?;
            needs.push(Need::Edge(Box::new(move |e| e.profile.lower1.contains(x))));
            needs.push(Need::Edge(Box::new(move |e| e.profile.reset.contains(x))));
        }
        Rule::ZeroCheckFree | Rule::Snz => {}
        Rule::RegionCycle => return None,
    }
    let needs_resets = matches!(hit.rule, Rule::GzgClear | Rule::ZeroCheckFree);
    loop {
        let (nodes, edges) = closed_walk(&g, hit.entry, &needs)?;
        let (bounded, reset) = edges
            .iter()
            .fold((ClockSet::empty(), ClockSet::empty()), |(b, r), e| {
                (b.union(e.profile.bounded), r.union(e.profile.reset))
            });
        let missing = bounded.difference(reset);
        if needs_resets && !missing.is_empty() {
            let x: ClockId = missing.iter().next().expect("nonempty");
            needs.push(Need::Edge(Box::new(move |e| e.profile.reset.contains(x))));
            continue;
        }
        return Some(Lasso {
            stem: hit.stem.iter().map(|(n, _)| n.clone()).collect(),
            stem_labels: hit.stem.iter().map(|(_, l)| *l).collect(),
            cycle: nodes.iter().map(|&n| g.nodes[n].clone()).collect(),
            cycle_labels: edges.iter().map(|e| e.label).collect(),
        });
    }
}

/// Drops component edges that could break the rule's promise if used in the cycle.
fn restrict_for_rule(g: &ExplicitGraph, rule: Rule, s: &SccSummary) -> ExplicitGraph {
    let mut g = g.clone();
    match rule {
        Rule::GzgClear => g.retain_edges(|_, e| e.profile.bounded.is_subset(s.reset)),
        Rule::ZeroCheckFree => g.retain_edges(|_, e| {
            e.profile.bounded.is_subset(s.reset) && e.profile.zero_checked.is_empty()
        }),
        Rule::LowerBound | Rule::Snz | Rule::RegionCycle => {}
    }
    g
}

/// A closed walk from `start` meeting every need in order, with at least one edge.
fn closed_walk(
    g: &ExplicitGraph,
    start: NodeId,
    needs: &[Need],
) -> Option<(Vec<NodeId>, Vec<Edge>)> {
    let mut nodes = vec![start];
    let mut edges: Vec<Edge> = Vec::new();
    let mut cur = start;
    for need in needs {
        let (ns, es) = match need {
            Need::Node(p) => bfs(g, cur, |n| p(g, n), None)?,
            Need::Edge(p) => bfs(g, cur, |_| false, Some(p.as_ref()))?,
        };
        cur = *ns.last().unwrap_or(&cur);
        nodes.extend(ns);
        edges.extend(es);
    }
    if edges.is_empty() {
        let first = g.edges[start].first()?.clone();
        cur = first.target;
        nodes.push(cur);
        edges.push(first);
    }
    let (ns, es) = bfs(g, cur, |n| n == start, None)?;
    nodes.extend(ns);
    edges.extend(es);
    nodes.pop();
    Some((nodes, edges))
}

/// Shortest path from `from` until a node satisfies `goal`, or, with
/// `edge_goal`, until an edge satisfying it has been taken. Returns the nodes
/// after `from` and the edges taken.
fn bfs(
    g: &ExplicitGraph,
    from: NodeId,
    goal: impl Fn(NodeId) -> bool,
    edge_goal: Option<&dyn Fn(&Edge) -> bool>,
) -> Option<(Vec<NodeId>, Vec<Edge>)> {
    if edge_goal.is_none() && goal(from) {
        return Some((vec![], vec![]));
    }
    let mut prev: Vec<Option<(NodeId, usize)>> = vec![None; g.len()];
    let mut seen = vec![false; g.len()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    let unwind = |prev: &[Option<(NodeId, usize)>], mut n: NodeId| {
        let mut ns = Vec::new();
        let mut es = Vec::new();
        while n != from {
            let (p, i) = prev[n].expect("path back to start");
            ns.push(n);
            es.push(g.edges[p][i].clone());
            n = p;
        }
        ns.reverse();
        es.reverse();
        (ns, es)
    };
    while let Some(n) = queue.pop_front() {
        for (i, e) in g.edges[n].iter().enumerate() {
            if let Some(eg) = edge_goal {
                if eg(e) {
                    let (mut ns, mut es) = unwind(&prev, n);
                    ns.push(e.target);
                    es.push(e.clone());
                    return Some((ns, es));
                }
            }
            let w = e.target;
            if !seen[w] {
                seen[w] = true;
                prev[w] = Some((n, i));
                if edge_goal.is_none() && goal(w) {
                    return Some(unwind(&prev, w));
                }
                queue.push_back(w);
            }
        }
    }
    None
}

/// Replays a lasso against the automaton and checks the rule's promise.
/// Witnesses for [`Rule::Snz`] refer to the transformed automaton.
pub fn validate_lasso(tba: &Tba, lasso: &Lasso, rule: Rule) -> Result<(), String> {
    let transformed;
    let a = if rule == Rule::Snz {
        transformed = snz_transform(tba);
        &transformed
    } else {
        tba
    };
    let m = a.max_constant();
    let all = a.all_clocks();
    if lasso.cycle.is_empty() || lasso.cycle.len() != lasso.cycle_labels.len() {
        return Err("cycle is empty or malformed".into());
    }
    if lasso.stem.len() != lasso.stem_labels.len() {
        return Err("stem is malformed".into());
    }
    let first = lasso.stem.first().unwrap_or(&lasso.cycle[0]);
    if first.state != a.init || first.zone != Zone::origin(a.clock_count()) {
        return Err("lasso does not start at the initial node".into());
    }
    if first.guess.is_some_and(|g| g != all) {
        return Err("initial guess must contain every clock".into());
    }
    let mut steps: Vec<(&WitnessNode, EdgeLabel, &WitnessNode)> = Vec::new();
    let chain: Vec<&WitnessNode> = lasso.stem.iter().chain(&lasso.cycle).collect();
    let labels: Vec<EdgeLabel> = lasso
        .stem_labels
        .iter()
        .chain(&lasso.cycle_labels)
        .copied()
        .collect();
    for (i, &l) in labels.iter().enumerate() {
        let to = chain.get(i + 1).copied().unwrap_or(&lasso.cycle[0]);
        steps.push((chain[i], l, to));
    }
    let mut cycle_profiles: Vec<EdgeProfile> = Vec::new();
    for (k, (from, label, to)) in steps.iter().enumerate() {
        let p = replay_step(a, m, all, from, *label, to).map_err(|e| format!("step {k}: {e}"))?;
        if k >= lasso.stem.len() {
            cycle_profiles.push(p);
        }
    }
    if !lasso.cycle.iter().any(|n| a.is_accepting(n.state)) {
        return Err("cycle has no accepting state".into());
    }
    let (bounded, reset) = cycle_profiles
        .iter()
        .fold((ClockSet::empty(), ClockSet::empty()), |(b, r), p| {
            (b.union(p.bounded), r.union(p.reset))
        });
    match rule {
        Rule::Snz => {}
        Rule::RegionCycle => return Err("region cycles have no symbolic witness".into()),
        Rule::GzgClear => {
            if !lasso
                .cycle
                .iter()
                .any(|n| n.guess == Some(ClockSet::empty()))
            {
                return Err("cycle has no clear node".into());
            }
            if !bounded.is_subset(reset) {
                return Err("a bounded clock is never reset on the cycle".into());
            }
        }
        Rule::ZeroCheckFree => {
            if cycle_profiles.iter().any(|p| !p.zero_checked.is_empty()) {
                return Err("cycle has a zero-check".into());
            }
            if !bounded.is_subset(reset) {
                return Err("a bounded clock is never reset on the cycle".into());
            }
        }
        Rule::LowerBound => {
            let lower = cycle_profiles
                .iter()
                .fold(ClockSet::empty(), |l, p| l.union(p.lower1));
            if lower.intersection(reset).is_empty() {
                return Err("no clock is both reset and at least 1 on the cycle".into());
            }
        }
    }
    Ok(())
}

fn replay_step(
    a: &Tba,
    m: u32,
    all: ClockSet,
    from: &WitnessNode,
    label: EdgeLabel,
    to: &WitnessNode,
) -> Result<EdgeProfile, String> {
    match label {
        EdgeLabel::Tau => {
            let y = from.guess.ok_or("tau edge without a guess")?;
            if y.is_empty() || to.guess != Some(ClockSet::empty()) {
                return Err("tau edge must clear a nonempty guess".into());
            }
            if to.state != from.state || to.zone != from.zone {
                return Err("tau edge changed the state or zone".into());
            }
            Ok(EdgeProfile::tau())
        }
        EdgeLabel::Action(i) => {
            let t = a.transitions.get(i).ok_or("unknown transition")?;
            if t.src != from.state || t.dst != to.state {
                return Err(format!("transition {i} does not connect the states"));
            }
            let p = from.zone.edge_profile(t).ok_or("guard unsatisfiable")?;
            let next = from.zone.fire(t, m).ok_or("guard unsatisfiable")?;
            if next != to.zone {
                return Err("successor zone differs".into());
            }
            match (from.guess, to.guess) {
                (None, None) => {}
                (Some(y), Some(y2)) => {
                    let positive = from
                        .zone
                        .up()
                        .and_guard(&t.guard)
                        .and_then(|f| f.and_positive(all.difference(y)));
                    if positive.is_none() {
                        return Err("edge needs a clock outside the guess to be 0".into());
                    }
                    if y2 != y.union(t.reset) {
                        return Err("guess not updated by the reset".into());
                    }
                }
                (None, Some(y2)) if y2 == all => {}
                _ => return Err("inconsistent guesses".into()),
            }
            Ok(p)
        }
    }
}
