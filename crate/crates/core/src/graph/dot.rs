use std::fmt::Write;

use super::{explore, EdgeLabel, Graph};
use crate::tba::Tba;

/// Graphviz rendering of everything reachable in `g`. Tau edges are dashed.
pub fn to_dot<G: Graph + ?Sized>(g: &mut G, tba: &Tba) -> String {
    let ex = explore(g);
    let mut s = String::new();
    let _ = writeln!(s, "digraph \"{}\" {{", escape(&tba.name));
    let _ = writeln!(s, "  node [shape=box];");
    let roots = g.roots();
    for &n in &ex.order {
        let w = g.node(n);
        let mut label = format!("{}\\n{}", tba.states[w.state], w.zone.describe(&tba.clocks));
        if let Some(y) = w.guess {
            label.push_str("\\n");
            label.push_str(&tba.clockset_string(y));
        }
        let mut attrs = format!("label=\"{}\"", escape_label(&label));
        if g.is_accepting(n) {
            attrs.push_str(", peripheries=2");
        }
        if roots.contains(&n) {
            attrs.push_str(", style=bold");
        }
        let _ = writeln!(s, "  n{n} [{attrs}];");
    }
    for (src, e) in &ex.edges {
        match e.label {
            EdgeLabel::Tau => {
                let _ = writeln!(
                    s,
                    "  n{src} -> n{} [label=\"tau\", style=dashed];",
                    e.target
                );
            }
            EdgeLabel::Action(i) => {
                let t = &tba.transitions[i];
                let mut label = t.label.clone().unwrap_or_else(|| format!("t{i}"));
                if !t.guard.is_true() {
                    let _ = write!(label, " [{}]", tba.guard_string(&t.guard));
                }
                if !t.reset.is_empty() {
                    let _ = write!(label, " {}", tba.clockset_string(t.reset));
                }
                let _ = writeln!(
                    s,
                    "  n{src} -> n{} [label=\"{}\"];",
                    e.target,
                    escape(&label)
                );
            }
        }
    }
    s.push_str("}\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

// keeps the `\n` line breaks already inserted
fn escape_label(s: &str) -> String {
    s.replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{GuessingZoneGraph, ZoneGraph};
    use crate::tba::fixtures;

    #[test]
    fn a1_dot() {
        let a = fixtures::a1();
        let d = to_dot(&mut ZoneGraph::new(&a), &a);
        assert!(d.starts_with("digraph \"a1\""));
        assert_eq!(d.matches(" -> ").count(), 2);
        assert!(d.contains("x>=1"));
        let d = to_dot(&mut GuessingZoneGraph::new(&a), &a);
        assert_eq!(d.matches("style=dashed").count(), 2);
    }
}
