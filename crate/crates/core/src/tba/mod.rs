//! Timed Büchi automata: the data model, the textual model format, network
//! products, the strongly non-Zeno transformation and model generators.

mod clockset;
pub mod fixtures;
pub mod gen;
mod parse;
mod product;
mod render;
mod snz;

use std::fmt;

pub use clockset::ClockSet;
pub use parse::{parse_model, parse_model_file, parse_tba};
pub use product::product;
pub use render::render;
pub use snz::snz_transform;

use crate::error::ModelError;

/// Index of a clock inside a [`Tba`]. Clocks are numbered densely from 1;
/// index 0 is the reference clock of difference bound matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClockId(pub usize);

impl ClockId {
    pub fn index(self) -> usize {
        self.0
    }
}

pub type StateId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rel {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
}

impl Rel {
    pub fn symbol(self) -> &'static str {
        match self {
            Rel::Lt => "<",
            Rel::Le => "<=",
            Rel::Eq => "=",
            Rel::Ge => ">=",
            Rel::Gt => ">",
        }
    }

    /// Whether `value rel constant` holds. Values are given scaled by `denom`.
    pub fn holds_scaled(self, value: i64, constant: i64, denom: i64) -> bool {
        let c = constant * denom;
        match self {
            Rel::Lt => value < c,
            Rel::Le => value <= c,
            Rel::Eq => value == c,
            Rel::Ge => value >= c,
            Rel::Gt => value > c,
        }
    }
}

/// `clock rel constant`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AtomicConstraint {
    pub clock: ClockId,
    pub rel: Rel,
    pub constant: u32,
}

impl AtomicConstraint {
    pub fn new(clock: ClockId, rel: Rel, constant: u32) -> Self {
        AtomicConstraint {
            clock,
            rel,
            constant,
        }
    }
}

/// Conjunction of atomic constraints; the empty guard is `true`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Guard {
    pub atoms: Vec<AtomicConstraint>,
}

impl Guard {
    pub fn tt() -> Self {
        Guard::default()
    }

    pub fn new(atoms: Vec<AtomicConstraint>) -> Self {
        Guard { atoms }
    }

    pub fn is_true(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn and(mut self, other: &Guard) -> Guard {
        self.atoms.extend(other.atoms.iter().copied());
        self
    }

    /// Evaluates the guard on a valuation scaled by `denom`
    /// (`values[i - 1]` is the scaled value of clock `i`).
    pub fn holds_scaled(&self, values: &[i64], denom: i64) -> bool {
        self.atoms.iter().all(|a| {
            a.rel
                .holds_scaled(values[a.clock.0 - 1], i64::from(a.constant), denom)
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Transition {
    pub src: StateId,
    pub guard: Guard,
    pub reset: ClockSet,
    pub dst: StateId,
    pub label: Option<String>,
}

impl Transition {
    pub fn new(src: StateId, dst: StateId) -> Self {
        Transition {
            src,
            guard: Guard::tt(),
            reset: ClockSet::empty(),
            dst,
            label: None,
        }
    }

    pub fn with_guard(mut self, guard: Guard) -> Self {
        self.guard = guard;
        self
    }

    pub fn with_reset(mut self, reset: ClockSet) -> Self {
        self.reset = reset;
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }
}

/// A timed Büchi automaton. Immutable once validated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tba {
    pub name: String,
    pub states: Vec<String>,
    pub init: StateId,
    /// Clock names; clock `ClockId(i)` is named `clocks[i - 1]`.
    pub clocks: Vec<String>,
    pub transitions: Vec<Transition>,
    pub accepting: Vec<bool>,
}

impl Tba {
    /// Checks the structural invariants and returns the automaton unchanged.
    pub fn validated(self) -> Result<Self, ModelError> {
        if self.states.is_empty() {
            return Err(ModelError::NoStates);
        }
        if self.init >= self.states.len() {
            return Err(ModelError::Invalid(format!(
                "initial state index {} out of range",
                self.init
            )));
        }
        if self.accepting.len() != self.states.len() {
            return Err(ModelError::Invalid(
                "accepting flags do not match the state count".into(),
            ));
        }
        if self.clocks.len() > ClockSet::CAPACITY {
            return Err(ModelError::Invalid(format!(
                "at most {} clocks are supported",
                ClockSet::CAPACITY
            )));
        }
        for (i, name) in self.states.iter().enumerate() {
            if self.states[..i].contains(name) {
                return Err(ModelError::DuplicateState(name.clone()));
            }
        }
        for (i, name) in self.clocks.iter().enumerate() {
            if self.clocks[..i].contains(name) {
                return Err(ModelError::DuplicateClock(name.clone()));
            }
        }
        let n = self.clocks.len();
        for t in &self.transitions {
            if t.src >= self.states.len() || t.dst >= self.states.len() {
                return Err(ModelError::Invalid(
                    "transition endpoint out of range".into(),
                ));
            }
            let bad_atom = t
                .guard
                .atoms
                .iter()
                .any(|a| a.clock.0 == 0 || a.clock.0 > n);
            let bad_reset = t.reset.iter().any(|c| c.0 == 0 || c.0 > n);
            if bad_atom || bad_reset {
                return Err(ModelError::Invalid("clock index out of range".into()));
            }
        }
        Ok(self)
    }

    pub fn clock_count(&self) -> usize {
        self.clocks.len()
    }

    pub fn clock_ids(&self) -> impl Iterator<Item = ClockId> {
        (1..=self.clocks.len()).map(ClockId)
    }

    /// The set of all clocks.
    pub fn all_clocks(&self) -> ClockSet {
        self.clock_ids().collect()
    }

    pub fn clock_name(&self, c: ClockId) -> &str {
        &self.clocks[c.0 - 1]
    }

    pub fn clock_by_name(&self, name: &str) -> Option<ClockId> {
        self.clocks
            .iter()
            .position(|c| c == name)
            .map(|i| ClockId(i + 1))
    }

    pub fn state_by_name(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s == name)
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting[q]
    }

    /// Transitions leaving `q`, with their indices, in declaration order.
    pub fn outgoing(&self, q: StateId) -> impl Iterator<Item = (usize, &Transition)> {
        self.transitions
            .iter()
            .enumerate()
            .filter(move |(_, t)| t.src == q)
    }

    /// The largest constant appearing in a guard, 0 for guard-free automata.
    pub fn max_constant(&self) -> u32 {
        self.transitions
            .iter()
            .flat_map(|t| t.guard.atoms.iter())
            .map(|a| a.constant)
            .max()
            .unwrap_or(0)
    }

    /// Renders a guard using clock names.
    pub fn guard_string(&self, g: &Guard) -> String {
        if g.is_true() {
            return "true".into();
        }
        g.atoms
            .iter()
            .map(|a| {
                format!(
                    "{}{}{}",
                    self.clock_name(a.clock),
                    a.rel.symbol(),
                    a.constant
                )
            })
            .collect::<Vec<_>>()
            .join(" & ")
    }

    pub fn clockset_string(&self, s: ClockSet) -> String {
        let names: Vec<&str> = s.iter().map(|c| self.clock_name(c)).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// Convenience for [`Tba::max_constant`].
pub fn max_constant(a: &Tba) -> u32 {
    a.max_constant()
}

impl fmt::Display for Tba {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn max_constant_examples() {
        assert_eq!(fixtures::a1().max_constant(), 1);
        let free = Tba {
            name: "free".into(),
            states: vec!["q".into()],
            init: 0,
            clocks: vec!["x".into()],
            transitions: vec![Transition::new(0, 0)],
            accepting: vec![true],
        };
        assert_eq!(max_constant(&free), 0);
        let t = parse_tba("clock x y\nstate q init\ntrans q -> q guard x<=3 & y>0\n").unwrap();
        assert_eq!(t.max_constant(), 3);
    }

    #[test]
    fn validation_rejects_duplicates() {
        let dup = Tba {
            name: "d".into(),
            states: vec!["q".into(), "q".into()],
            init: 0,
            clocks: vec![],
            transitions: vec![],
            accepting: vec![false, false],
        };
        assert!(matches!(
            dup.validated(),
            Err(ModelError::DuplicateState(_))
        ));
    }
}
