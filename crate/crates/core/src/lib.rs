//! Büchi non-emptiness for timed automata.
//!
//! Decides whether a timed Büchi automaton has a non-Zeno accepting run by
//! exploring zone graphs and guessing zone graphs. A region-graph checker for
//! small models is included as a reference.

pub mod cli;
pub mod emptiness;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod tba;
pub mod zone;

pub use error::{CheckError, ModelError};
pub use tba::{ClockId, ClockSet, Tba, Transition};

/// Zone over `i32` bounds, the scalar used by all checkers.
pub type Zone = zone::Zone<i32>;
pub type Bound = zone::Bound<i32>;
pub type Dbm = zone::Dbm<i32>;
/// Zone over `i64` bounds for models with large constants.
pub type WideZone = zone::Zone<i64>;
