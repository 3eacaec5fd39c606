use std::fmt::Write;

use super::Tba;

/// Writes `a` in the model format accepted by [`super::parse_tba`].
pub fn render(a: &Tba) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "automaton {}", a.name);
    if !a.clocks.is_empty() {
        let _ = writeln!(out, "clock {}", a.clocks.join(" "));
    }
    for (i, s) in a.states.iter().enumerate() {
        let _ = write!(out, "state {s}");
        if i == a.init {
            out.push_str(" init");
        }
        if a.accepting[i] {
            out.push_str(" accepting");
        }
        out.push('\n');
    }
    for t in &a.transitions {
        let _ = write!(out, "trans {} -> {}", a.states[t.src], a.states[t.dst]);
        if let Some(l) = &t.label {
            let _ = write!(out, " sync {l}");
        }
        if !t.guard.is_true() {
            let _ = write!(out, " guard {}", a.guard_string(&t.guard));
        }
        if !t.reset.is_empty() {
            let names: Vec<&str> = t.reset.iter().map(|c| a.clock_name(c)).collect();
            let _ = write!(out, " reset {}", names.join(" "));
        }
        out.push('\n');
    }
    out
}
