//! Brute-force reference procedures on regions, for small models only.
//!
//! [`rg_check`] decides non-emptiness on the region graph and serves as the
//! ground truth for the zone-based checkers. [`closure_sets`] enumerates the
//! regions and d-regions met by a zone.

mod region;

use std::collections::hash_map::Entry;
use std::collections::{HashMap, HashSet, VecDeque};

pub use region::{all_dregions, all_regions, region_of, ClockPart, DRegion, Region};

use crate::emptiness::{Outcome, Rule};
use crate::error::CheckError;
use crate::tba::{ClockId, StateId, Tba};
use crate::Zone;

pub const MAX_CLOCKS: usize = 3;
pub const MAX_CONSTANT: u32 = 2;

fn check_caps(clocks: usize, constant: u32) -> Result<(), CheckError> {
    if clocks > MAX_CLOCKS || constant > MAX_CONSTANT {
        return Err(CheckError::OracleCap {
            max_clocks: MAX_CLOCKS,
            max_constant: MAX_CONSTANT,
            clocks,
            constant,
        });
    }
    Ok(())
}

/// All regions, within the size caps.
pub fn enumerate_regions(clocks: usize, max_constant: u32) -> Result<Vec<Region>, CheckError> {
    check_caps(clocks, max_constant)?;
    Ok(all_regions(clocks, max_constant))
}

/// Successors of `(q, r)`: some delay followed by a transition of `a`.
pub fn rg_successors(a: &Tba, q: StateId, r: &Region) -> Vec<(usize, (StateId, Region))> {
    let m = a.max_constant();
    let chain = r.delay_chain(m);
    let mut out = Vec::new();
    for (idx, t) in a.outgoing(q) {
        for s in &chain {
            if s.satisfies(&t.guard, m) {
                let succ = (idx, (t.dst, s.reset(t.reset)));
                if !out.contains(&succ) {
                    out.push(succ);
                }
            }
        }
    }
    out
}

struct RegionGraph {
    nodes: Vec<(StateId, Region)>,
    /// `(target, is_action)`; delay edges go to the time successor, or loop
    /// once every clock is above `M`.
    edges: Vec<Vec<(usize, bool)>>,
}

fn build(a: &Tba) -> RegionGraph {
    let m = a.max_constant();
    let mut index: HashMap<(StateId, Region), usize> = HashMap::new();
    let mut g = RegionGraph {
        nodes: Vec::new(),
        edges: Vec::new(),
    };
    let mut queue = VecDeque::new();
    let mut intern = |key: (StateId, Region), g: &mut RegionGraph, queue: &mut VecDeque<usize>| {
        *index.entry(key.clone()).or_insert_with(|| {
            g.nodes.push(key);
            g.edges.push(Vec::new());
            queue.push_back(g.nodes.len() - 1);
            g.nodes.len() - 1
        })
    };
    intern(
        (a.init, Region::origin(a.clock_count())),
        &mut g,
        &mut queue,
    );
    while let Some(n) = queue.pop_front() {
        let (q, r) = g.nodes[n].clone();
        let delayed = match r.time_successor(m) {
            Some(s) => intern((q, s), &mut g, &mut queue),
            None => n,
        };
        g.edges[n].push((delayed, false));
        for (_, t) in a.outgoing(q) {
            if r.satisfies(&t.guard, m) {
                let w = intern((t.dst, r.reset(t.reset)), &mut g, &mut queue);
                g.edges[n].push((w, true));
            }
        }
    }
    g
}

/// Strongly connected components of the subgraph induced by `members`.
fn sccs(g: &RegionGraph, members: &HashSet<usize>) -> Vec<Vec<usize>> {
    // iterative Tarjan
    let mut index: HashMap<usize, usize> = HashMap::new();
    let mut low: HashMap<usize, usize> = HashMap::new();
    let mut on_stack = HashSet::new();
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut counter = 0;
    let mut order: Vec<usize> = members.iter().copied().collect();
    order.sort();
    for &root in &order {
        if index.contains_key(&root) {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index.insert(root, counter);
        low.insert(root, counter);
        counter += 1;
        stack.push(root);
        on_stack.insert(root);
        while let Some(&mut (v, ref mut next)) = call.last_mut() {
            let succ: Vec<usize> = g.edges[v]
                .iter()
                .map(|&(w, _)| w)
                .filter(|w| members.contains(w))
                .collect();
            if *next < succ.len() {
                let w = succ[*next];
                *next += 1;
                if let Entry::Vacant(slot) = index.entry(w) {
                    slot.insert(counter);
                    low.insert(w, counter);
                    counter += 1;
                    stack.push(w);
                    on_stack.insert(w);
                    call.push((w, 0));
                } else if on_stack.contains(&w) {
                    let lw = index[&w].min(low[&v]);
                    low.insert(v, lw);
                }
                continue;
            }
            call.pop();
            if let Some(&(p, _)) = call.last() {
                let lp = low[&p].min(low[&v]);
                low.insert(p, lp);
            }
            if low[&v] == index[&v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack.remove(&w);
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                out.push(comp);
            }
        }
    }
    out
}

/// Decides whether `a` has a non-Zeno accepting run by looking for a
/// reachable set of region nodes, strongly connected through at least one
/// transition, that contains an accepting state and in which every clock is
/// either always above `M` or both 0 and positive somewhere.
pub fn rg_check(a: &Tba) -> Result<Outcome, CheckError> {
    check_caps(a.clock_count(), a.max_constant())?;
    let g = build(a);
    let clocks: Vec<ClockId> = a.clock_ids().collect();
    let mut work: Vec<HashSet<usize>> = vec![(0..g.nodes.len()).collect()];
    while let Some(set) = work.pop() {
        for comp in sccs(&g, &set) {
            let inside: HashSet<usize> = comp.iter().copied().collect();
            let has_action = comp.iter().any(|&v| {
                g.edges[v]
                    .iter()
                    .any(|&(w, act)| act && inside.contains(&w))
            });
            if !has_action || !comp.iter().any(|&v| a.is_accepting(g.nodes[v].0)) {
                continue;
            }
            let mut keep = inside.clone();
            let mut hopeless = false;
            for &x in &clocks {
                let regions = || comp.iter().map(|&v| &g.nodes[v].1);
                if regions().all(|r| r.is_above(x)) {
                    continue;
                }
                let zero = regions().any(|r| r.is_zero(x));
                let positive = regions().any(|r| !r.is_zero(x));
                if zero && positive {
                    continue;
                }
                if zero {
                    // x never leaves 0, so no time passes in any sub-cycle
                    hopeless = true;
                    break;
                }
                keep.retain(|&v| g.nodes[v].1.is_above(x));
            }
            if hopeless {
                continue;
            }
            if keep.len() == inside.len() {
                return Ok(Outcome::NonEmpty(Rule::RegionCycle));
            }
            if !keep.is_empty() {
                work.push(keep);
            }
        }
    }
    Ok(Outcome::Empty)
}

/// Regions and d-regions that intersect `z`.
pub fn closure_sets(
    z: &Zone,
    max_constant: u32,
) -> Result<(Vec<DRegion>, Vec<Region>), CheckError> {
    let n = z.clock_count();
    check_caps(n, max_constant)?;
    let d = all_dregions(n, max_constant)
        .into_iter()
        .filter(|d| d.zone.intersects(z))
        .collect();
    let r = all_regions(n, max_constant)
        .into_iter()
        .filter(|r| r.zone(max_constant).intersects(z))
        .collect();
    Ok((d, r))
}
