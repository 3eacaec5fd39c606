//! Büchi non-emptiness checks.
//!
//! * [`check_optimized`] searches the zone graph and falls back to a guessing
//!   zone graph restricted to an SCC only when that SCC contains zero-checks.
//! * [`check_gzg`] searches the full guessing zone graph.
//! * [`check_snz`] searches the zone graph of the strongly non-Zeno transform.

mod search;
mod summary;
mod witness;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

pub use search::Hit;
pub use summary::SccSummary;
pub use witness::{lasso_from_hit, validate_lasso, Lasso};

use search::{ignore_maximal, search, Ctx};

use crate::error::CheckError;
use crate::graph::{ExplicitGraph, Graph, GuessingZoneGraph, NodeId, ZoneGraph};
use crate::tba::{snz_transform, Tba};

/// Which sufficient condition established non-emptiness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Some clock is reset and later at least 1 in the component.
    LowerBound,
    /// No zero-checks and every bounded clock is reset.
    ZeroCheckFree,
    /// A clear guessing node and every bounded clock is reset.
    GzgClear,
    /// An accepting cycle in the strongly non-Zeno transform.
    Snz,
    /// A progressive accepting cycle of the region graph.
    RegionCycle,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::LowerBound => "lower_bound",
            Rule::ZeroCheckFree => "zero_check_free",
            Rule::GzgClear => "gzg_clear",
            Rule::Snz => "snz",
            Rule::RegionCycle => "region_cycle",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Optimized,
    Gzg,
    Snz,
    Oracle,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Optimized,
        Algorithm::Gzg,
        Algorithm::Snz,
        Algorithm::Oracle,
    ];
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Optimized => "optimized",
            Algorithm::Gzg => "gzg",
            Algorithm::Snz => "snz",
            Algorithm::Oracle => "oracle",
        })
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.to_string() == s)
            .ok_or_else(|| format!("unknown algorithm {s}"))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Nodes expanded by the main search.
    pub nodes_visited: usize,
    /// Distinct nodes generated in the main graph.
    pub nodes_stored: usize,
    pub edges_traversed: usize,
    /// Maximal SCCs completed, nested searches included.
    pub scc_count: usize,
    /// Nested searches started on a completed SCC.
    pub restarts: usize,
    /// Nodes generated in guessing graphs built for zero-check SCCs.
    pub gzg_nodes_expanded: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Empty,
    NonEmpty(Rule),
}

impl Outcome {
    pub fn is_empty(&self) -> bool {
        matches!(self, Outcome::Empty)
    }
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub outcome: Outcome,
    pub stats: SearchStats,
    pub witness: Option<Lasso>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CheckOptions {
    pub max_nodes: Option<usize>,
    pub witness: bool,
}

impl CheckOptions {
    pub fn with_witness() -> Self {
        CheckOptions {
            witness: true,
            ..Default::default()
        }
    }
}

/// Runs the selected algorithm. `Oracle` is limited to small models.
pub fn check(tba: &Tba, algo: Algorithm, opts: &CheckOptions) -> Result<Verdict, CheckError> {
    match algo {
        Algorithm::Optimized => check_optimized(tba, opts),
        Algorithm::Gzg => check_gzg(tba, opts),
        Algorithm::Snz => check_snz(tba, opts),
        Algorithm::Oracle => crate::oracle::rg_check(tba).map(|outcome| Verdict {
            outcome,
            stats: SearchStats::default(),
            witness: None,
        }),
    }
}

fn finish<G: Graph>(
    g: &G,
    mut ctx: Ctx,
    hit: Option<Hit>,
    opts: &CheckOptions,
) -> Result<Verdict, CheckError> {
    ctx.stats.nodes_stored = g.stored();
    let Some(hit) = hit else {
        return Ok(Verdict {
            outcome: Outcome::Empty,
            stats: ctx.stats,
            witness: None,
        });
    };
    let witness = if opts.witness {
        Some(lasso_from_hit(&hit).ok_or(CheckError::NoWitness)?)
    } else {
        None
    };
    Ok(Verdict {
        outcome: Outcome::NonEmpty(hit.rule),
        stats: ctx.stats,
        witness,
    })
}

/// Accepting cycles of the strongly non-Zeno transform.
pub fn check_snz(tba: &Tba, opts: &CheckOptions) -> Result<Verdict, CheckError> {
    let a = snz_transform(tba);
    let mut g = ZoneGraph::new(&a);
    let mut ctx = Ctx::new(opts.max_nodes);
    let success = |s: &SccSummary| (s.accepting && s.has_edge).then_some(Rule::Snz);
    let hit = search(&mut g, &mut ctx, true, &success, &mut ignore_maximal)?;
    finish(&g, ctx, hit, opts)
}

fn gzg_success(s: &SccSummary) -> Option<Rule> {
    (s.accepting && s.clear && s.has_edge && s.blocking().is_empty()).then_some(Rule::GzgClear)
}

fn gzg_blocked(s: &SccSummary) -> bool {
    s.accepting && s.clear && s.has_edge && !s.blocking().is_empty()
}

fn quick_success(s: &SccSummary) -> Option<Rule> {
    if !s.accepting || !s.has_edge {
        return None;
    }
    if !s.lower1.intersection(s.reset).is_empty() {
        return Some(Rule::LowerBound);
    }
    (!s.zero_check && s.blocking().is_empty()).then_some(Rule::ZeroCheckFree)
}

fn quick_blocked(s: &SccSummary) -> bool {
    s.accepting && s.has_edge && !s.zero_check && !s.blocking().is_empty()
}

/// Accepting, clear, unblocked components of the full guessing zone graph.
pub fn check_gzg(tba: &Tba, opts: &CheckOptions) -> Result<Verdict, CheckError> {
    let mut g = GuessingZoneGraph::new(tba);
    let mut ctx = Ctx::new(opts.max_nodes);
    let hit = search_guessing(&mut g, &mut ctx, true)?;
    finish(&g, ctx, hit, opts)
}

fn search_guessing<G: Graph>(
    g: &mut G,
    ctx: &mut Ctx,
    top: bool,
) -> Result<Option<Hit>, CheckError> {
    let mut on_max = |g: &mut G, members: &[NodeId], s: &SccSummary, ctx: &mut Ctx| {
        if !gzg_blocked(s) {
            return Ok(None);
        }
        resolve_blocked_scc(
            ExplicitGraph::induced(g, members),
            s,
            ctx,
            &gzg_success,
            &gzg_blocked,
        )
    };
    search(g, ctx, top, &gzg_success, &mut on_max)
}

/// Searches a completed SCC again without the edges that bound a clock the
/// SCC never resets: such edges cannot occur infinitely often on a non-Zeno
/// run. Sub-SCCs that are still blocked are handled recursively.
///
/// `scc` must have its SCC root as node 0; the returned stem starts there.
pub(crate) fn resolve_blocked_scc(
    scc: ExplicitGraph,
    summary: &SccSummary,
    ctx: &mut Ctx,
    success: &dyn Fn(&SccSummary) -> Option<Rule>,
    blocked: &dyn Fn(&SccSummary) -> bool,
) -> Result<Option<Hit>, CheckError> {
    ctx.stats.restarts += 1;
    let blocking = summary.blocking();
    let mut pruned = scc.clone();
    pruned.retain_edges(|_, e| e.profile.bounded.intersection(blocking).is_empty());
    let mut on_max = |g: &mut ExplicitGraph, members: &[NodeId], s: &SccSummary, ctx: &mut Ctx| {
        if !blocked(s) {
            return Ok(None);
        }
        resolve_blocked_scc(ExplicitGraph::induced(g, members), s, ctx, success, blocked)
    };
    let Some(mut hit) = search(&mut pruned, ctx, false, success, &mut on_max)? else {
        return Ok(None);
    };
    // re-anchor the stem at the SCC root using the unpruned edges
    let target = hit.component.origin[hit.entry];
    hit.stem = explicit_path(&scc, 0, target);
    hit.component.origin = hit
        .component
        .origin
        .iter()
        .map(|&i| scc.origin[i])
        .collect();
    Ok(Some(hit))
}

fn explicit_path(
    g: &ExplicitGraph,
    from: NodeId,
    to: NodeId,
) -> Vec<(crate::graph::WitnessNode, crate::graph::EdgeLabel)> {
    let mut prev = vec![None; g.len()];
    let mut seen = vec![false; g.len()];
    seen[from] = true;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(n) = queue.pop_front() {
        if n == to {
            break;
        }
        for e in &g.edges[n] {
            if !seen[e.target] {
                seen[e.target] = true;
                prev[e.target] = Some((n, e.label));
                queue.push_back(e.target);
            }
        }
    }
    let mut out = Vec::new();
    let mut cur = to;
    while let Some((p, l)) = prev[cur] {
        out.push((g.nodes[p].clone(), l));
        cur = p;
    }
    out.reverse();
    out
}

/// Zone-graph search with cheap sufficient conditions; SCCs with zero-checks
/// are re-examined in a guessing zone graph restricted to their nodes.
pub fn check_optimized(tba: &Tba, opts: &CheckOptions) -> Result<Verdict, CheckError> {
    let all = tba.all_clocks();
    let mut g = ZoneGraph::new(tba);
    let mut ctx = Ctx::new(opts.max_nodes);
    let mut on_max = |g: &mut ZoneGraph, members: &[NodeId], s: &SccSummary, ctx: &mut Ctx| {
        if !s.accepting || !s.has_edge {
            return Ok(None);
        }
        if s.zero_check {
            ctx.stats.restarts += 1;
            let allowed: HashSet<_> = members.iter().map(|&m| g.key(m).clone()).collect();
            let root = g.key(members[0]).clone();
            let mut rg = GuessingZoneGraph::restricted(tba, root, allowed);
            let hit = search_guessing(&mut rg, ctx, false);
            ctx.stats.gzg_nodes_expanded += rg.stored();
            return hit;
        }
        if quick_blocked(s) {
            let scc = ExplicitGraph::induced(g, members);
            return resolve_blocked_scc(scc, s, ctx, &quick_success, &quick_blocked);
        }
        Ok(None)
    };
    let hit = search(&mut g, &mut ctx, true, &quick_success, &mut on_max)?;
    let mut verdict = finish(&g, ctx, hit, opts)?;
    if let Some(w) = verdict.witness.as_mut() {
        // a stem through the zone graph followed by a guessing cycle
        if w.cycle.iter().any(|n| n.guess.is_some()) {
            for n in &mut w.stem {
                n.guess.get_or_insert(all);
            }
        }
    }
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tba::{fixtures, parse_tba};

    fn run(a: &Tba, algo: Algorithm) -> Verdict {
        let v = check(a, algo, &CheckOptions::with_witness()).unwrap();
        if let (Outcome::NonEmpty(rule), Some(w)) = (&v.outcome, &v.witness) {
            validate_lasso(a, w, *rule).unwrap_or_else(|e| panic!("{} {algo}: {e}", a.name));
        }
        v
    }

    #[test]
    fn fixtures_all_algorithms() {
        let expect = [("a1", false), ("a2", true), ("a3", false)];
        for (a, (name, empty)) in fixtures::all().iter().zip(expect) {
            for algo in [Algorithm::Optimized, Algorithm::Gzg, Algorithm::Snz] {
                let v = run(a, algo);
                assert_eq!(v.outcome.is_empty(), empty, "{name} {algo}");
            }
        }
    }

    #[test]
    fn a1_is_found_by_lower_bound() {
        let v = run(&fixtures::a1(), Algorithm::Optimized);
        assert_eq!(v.outcome, Outcome::NonEmpty(Rule::LowerBound));
        assert_eq!(v.stats.gzg_nodes_expanded, 0);
    }

    #[test]
    fn a3_needs_the_guessing_graph() {
        let v = run(&fixtures::a3(), Algorithm::Optimized);
        assert_eq!(v.outcome, Outcome::NonEmpty(Rule::GzgClear));
        assert!(v.stats.gzg_nodes_expanded > 0);
        let w = v.witness.unwrap();
        assert!(w
            .cycle
            .iter()
            .any(|n| n.guess == Some(crate::tba::ClockSet::empty())));
    }

    #[test]
    fn a2_restricted_graph_has_no_clear_cycle() {
        let v = run(&fixtures::a2(), Algorithm::Optimized);
        assert!(v.outcome.is_empty());
        assert!(v.stats.gzg_nodes_expanded > 0);
    }

    #[test]
    fn bounded_clock_never_reset_is_resolved_away() {
        // {q, r} is one SCC where y stays bounded; only the loop on r survives
        let a = parse_tba(
            "clock x y\nstate q init accepting\nstate r accepting\n\
             trans q -> q guard y<=2\n\
             trans q -> r\n\
             trans r -> q guard y<=2\n\
             trans r -> r guard x<=1 reset x\n",
        )
        .unwrap();
        for algo in [Algorithm::Optimized, Algorithm::Gzg, Algorithm::Snz] {
            let v = run(&a, algo);
            assert!(!v.outcome.is_empty(), "{algo}");
            if algo != Algorithm::Snz {
                assert!(v.stats.restarts > 0, "{algo}");
            }
        }
    }

    #[test]
    fn blocked_only_cycle_is_empty() {
        let a = parse_tba(
            "clock x y\nstate q init accepting\n\
             trans q -> q guard y<=2 & x>=1 reset x\n",
        )
        .unwrap();
        for algo in [Algorithm::Optimized, Algorithm::Gzg, Algorithm::Snz] {
            assert!(run(&a, algo).outcome.is_empty(), "{algo}");
        }
    }

    #[test]
    fn node_limit_is_reported() {
        let a = crate::tba::gen::gen_an(4, 1).unwrap();
        let opts = CheckOptions {
            max_nodes: Some(5),
            witness: false,
        };
        assert!(matches!(
            check_optimized(&a, &opts),
            Err(CheckError::NodeLimit(5))
        ));
    }

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.to_string().parse::<Algorithm>().unwrap(), a);
        }
        assert!("fast".parse::<Algorithm>().is_err());
    }
}
