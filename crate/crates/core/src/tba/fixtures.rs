//! The three small automata used throughout the tests and the `gen fixtures`
//! command.

use super::parse_tba;
use super::Tba;

/// `a -(x>=1)-> b -(x<=1, {x})-> a`, with `a` initial and accepting.
pub const A1_SRC: &str = "\
automaton a1
clock x
state a init accepting
state b
trans a -> b guard x>=1
trans b -> a guard x<=1 reset x
";

/// Only Zeno runs: both clocks are forced to stay at zero.
pub const A2_SRC: &str = "\
automaton a2
clock x y
state 0 init accepting
state 1
state 2
trans 0 -> 1 reset x
trans 0 -> 2 reset y
trans 1 -> 0 guard y=0
trans 2 -> 0 guard x=0
";

/// Has a non-Zeno run: every zero-check is preceded by the matching reset.
pub const A3_SRC: &str = "\
automaton a3
clock x y
state 0 init accepting
state 1
state 2
trans 0 -> 1 reset x
trans 0 -> 2 guard x=0
trans 1 -> 0 guard y=0
trans 2 -> 0 reset y
";

pub fn a1() -> Tba {
    parse_tba(A1_SRC).expect("fixture a1")
}

pub fn a2() -> Tba {
    parse_tba(A2_SRC).expect("fixture a2")
}

pub fn a3() -> Tba {
    parse_tba(A3_SRC).expect("fixture a3")
}

/// All fixtures with their names.
pub fn all() -> Vec<Tba> {
    vec![a1(), a2(), a3()]
}
