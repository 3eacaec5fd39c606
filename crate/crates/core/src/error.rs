use std::path::PathBuf;

use thiserror::Error;

/// Errors raised while reading, building or transforming automata.
#[derive(Debug, Error)]
pub enum ModelError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("no states declared")]
    NoStates,
    #[error("line {line}: unknown clock {name}")]
    UnknownClock { line: usize, name: String },
    #[error("line {line}: unknown state {name}")]
    UnknownState { line: usize, name: String },
    #[error("line {line}: negative constant {value}")]
    NegativeConstant { line: usize, value: String },
    #[error("duplicate state {0}")]
    DuplicateState(String),
    #[error("duplicate clock {0}")]
    DuplicateClock(String),
    #[error("accepting component {index} out of range for {count} processes")]
    AcceptingComponent { index: usize, count: usize },
    #[error("invalid generator parameter: {0}")]
    Parameter(String),
    #[error("invalid automaton: {0}")]
    Invalid(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// Errors raised by the checking procedures.
#[derive(Debug, Error)]
pub enum CheckError {
    #[error("exploration aborted after {0} nodes (--max-nodes)")]
    NodeLimit(usize),
    #[error("region oracle limited to {max_clocks} clocks and constants up to {max_constant} (got {clocks} clocks, M = {constant})")]
    OracleCap {
        max_clocks: usize,
        max_constant: u32,
        clocks: usize,
        constant: u32,
    },
    #[error("no successful search to extract a witness from")]
    NoWitness,
    #[error(transparent)]
    Model(#[from] ModelError),
}
