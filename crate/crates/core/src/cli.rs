//! Command-line front end.
//!
//! Exit codes: 10 non-empty, 11 empty, 1 error, 2 disagreement between
//! algorithms in `compare`, 3 node limit reached.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::emptiness::{check, Algorithm, CheckOptions, Outcome, SearchStats};
use crate::error::{CheckError, ModelError};
use crate::graph::{explore, to_dot, GuessingZoneGraph, ZoneGraph};
use crate::tba::gen::{gen_an, gen_fischer, FischerVariant};
use crate::tba::{fixtures, parse_model_file, render, snz_transform, Tba};

pub const EXIT_NONEMPTY: i32 = 10;
pub const EXIT_EMPTY: i32 = 11;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_DISAGREE: i32 = 2;
pub const EXIT_NODE_LIMIT: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "tbacheck",
    version,
    about = "Büchi non-emptiness of timed automata"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether the model has a non-Zeno accepting run.
    Check {
        model: PathBuf,
        #[arg(long, default_value = "optimized")]
        algo: Algorithm,
        /// Print a symbolic lasso when the model is non-empty.
        #[arg(long)]
        witness: bool,
        #[arg(long)]
        max_nodes: Option<usize>,
    },
    /// Run snz, gzg and optimized and compare their verdicts.
    Compare {
        model: PathBuf,
        #[arg(long)]
        max_nodes: Option<usize>,
    },
    /// Write generated models.
    Gen {
        family: Family,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        d: u32,
        #[arg(long, default_value = "mutex")]
        variant: FischerVariant,
        /// Output file, or directory for `fixtures`. Defaults to stdout and
        /// the current directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the zone graph or guessing zone graph in DOT.
    Dot {
        model: PathBuf,
        #[arg(long, value_enum, default_value = "zg")]
        graph: GraphKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print model and graph sizes.
    Stats { model: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    An,
    Fischer,
    Fixtures,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphKind {
    Zg,
    Gzg,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error("{}: {source}", path.display())]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Output(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Check(CheckError::NodeLimit(_)) => EXIT_NODE_LIMIT,
            _ => EXIT_ERROR,
        }
    }
}

/// Result of one `check` run.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub model: String,
    pub algorithm: Algorithm,
    pub outcome: Outcome,
    /// Absent for the region oracle, which keeps no search statistics.
    pub stats: Option<SearchStats>,
    pub time: Duration,
}

impl RunReport {
    pub fn verdict_line(&self) -> String {
        match self.outcome {
            Outcome::Empty => "VERDICT: EMPTY".to_string(),
            Outcome::NonEmpty(rule) => format!("VERDICT: NONEMPTY (rule={rule})"),
        }
    }

    pub fn write_to(&self, w: &mut dyn Write) -> std::io::Result<()> {
        writeln!(w, "{}", self.verdict_line())?;
        writeln!(w, "model: {}", self.model)?;
        writeln!(w, "algorithm: {}", self.algorithm)?;
        if let Some(s) = &self.stats {
            writeln!(w, "nodes_stored: {}", s.nodes_stored)?;
            writeln!(w, "nodes_visited: {}", s.nodes_visited)?;
            writeln!(w, "edges_traversed: {}", s.edges_traversed)?;
            writeln!(w, "scc_count: {}", s.scc_count)?;
            writeln!(w, "restarts: {}", s.restarts)?;
            writeln!(w, "gzg_nodes_expanded: {}", s.gzg_nodes_expanded)?;
        }
        writeln!(w, "time_ms: {:.3}", self.time.as_secs_f64() * 1000.0)
    }
}

fn outcome_code(o: &Outcome) -> i32 {
    match o {
        Outcome::Empty => EXIT_EMPTY,
        Outcome::NonEmpty(_) => EXIT_NONEMPTY,
    }
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit code; diagnostics go to `err`.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_ERROR;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    match run(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Check {
            model,
            algo,
            witness,
            max_nodes,
        } => {
            let a = parse_model_file(&model)?;
            cmd_check(&a, algo, witness, max_nodes, out)
        }
        Command::Compare { model, max_nodes } => {
            let a = parse_model_file(&model)?;
            cmd_compare(&a, max_nodes, out)
        }
        Command::Gen {
            family,
            n,
            d,
            variant,
            out: path,
        } => cmd_gen(family, n, d, variant, path.as_deref(), out),
        Command::Dot {
            model,
            graph,
            out: path,
        } => {
            let a = parse_model_file(&model)?;
            let text = match graph {
                GraphKind::Zg => to_dot(&mut ZoneGraph::new(&a), &a),
                GraphKind::Gzg => to_dot(&mut GuessingZoneGraph::new(&a), &a),
            };
            emit(path.as_deref(), &text, out)?;
            Ok(0)
        }
        Command::Stats { model } => {
            let a = parse_model_file(&model)?;
            cmd_stats(&a, out)?;
            Ok(0)
        }
    }
}

pub fn cmd_check(
    a: &Tba,
    algo: Algorithm,
    witness: bool,
    max_nodes: Option<usize>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let opts = CheckOptions {
        max_nodes,
        witness: witness && algo != Algorithm::Oracle,
    };
    let start = Instant::now();
    let v = check(a, algo, &opts)?;
    let report = RunReport {
        model: a.name.clone(),
        algorithm: algo,
        outcome: v.outcome.clone(),
        stats: (algo != Algorithm::Oracle).then_some(v.stats),
        time: start.elapsed(),
    };
    report.write_to(out)?;
    if witness {
        match &v.witness {
            Some(l) => {
                let target = if algo == Algorithm::Snz {
                    snz_transform(a)
                } else {
                    a.clone()
                };
                writeln!(out, "witness:")?;
                write!(out, "{}", l.render(&target))?;
            }
            None if algo == Algorithm::Oracle && !v.outcome.is_empty() => {
                writeln!(out, "witness: unavailable for the region oracle")?;
            }
            None => {}
        }
    }
    Ok(outcome_code(&v.outcome))
}

pub fn cmd_compare(
    a: &Tba,
    max_nodes: Option<usize>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let opts = CheckOptions {
        max_nodes,
        witness: false,
    };
    writeln!(out, "model: {}", a.name)?;
    writeln!(
        out,
        "{:<10} {:>10} {:>10}  verdict",
        "algorithm", "stored", "visited"
    )?;
    let mut outcomes = Vec::new();
    for algo in [Algorithm::Snz, Algorithm::Gzg, Algorithm::Optimized] {
        let v = check(a, algo, &opts)?;
        let verdict = if v.outcome.is_empty() {
            "EMPTY"
        } else {
            "NONEMPTY"
        };
        writeln!(
            out,
            "{:<10} {:>10} {:>10}  {verdict}",
            algo.to_string(),
            v.stats.nodes_stored,
            v.stats.nodes_visited
        )?;
        outcomes.push(v.outcome.is_empty());
    }
    if outcomes.iter().any(|&e| e != outcomes[0]) {
        writeln!(out, "agree: no")?;
        return Ok(EXIT_DISAGREE);
    }
    writeln!(out, "agree: yes")?;
    Ok(if outcomes[0] {
        EXIT_EMPTY
    } else {
        EXIT_NONEMPTY
    })
}

pub fn cmd_gen(
    family: Family,
    n: usize,
    d: u32,
    variant: FischerVariant,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    match family {
        Family::An => emit(path, &render(&gen_an(n, d)?), out)?,
        Family::Fischer => emit(path, &render(&gen_fischer(n, variant)?), out)?,
        Family::Fixtures => {
            let dir = path.unwrap_or(Path::new("."));
            std::fs::create_dir_all(dir).map_err(|source| CliError::Write {
                path: dir.to_path_buf(),
                source,
            })?;
            for (file, a) in ["a1.tba", "a2.tba", "a3.tba"].iter().zip(fixtures::all()) {
                let p = dir.join(file);
                write_file(&p, &render(&a))?;
                writeln!(out, "wrote {}", p.display())?;
            }
        }
    }
    Ok(0)
}

pub fn cmd_stats(a: &Tba, out: &mut dyn Write) -> Result<(), CliError> {
    writeln!(out, "model: {}", a.name)?;
    writeln!(out, "states: {}", a.states.len())?;
    writeln!(out, "clocks: {}", a.clock_count())?;
    writeln!(out, "transitions: {}", a.transitions.len())?;
    writeln!(out, "max_constant: {}", a.max_constant())?;
    writeln!(
        out,
        "zg_nodes: {}",
        explore(&mut ZoneGraph::new(a)).order.len()
    )?;
    writeln!(
        out,
        "gzg_nodes: {}",
        explore(&mut GuessingZoneGraph::new(a)).order.len()
    )?;
    let s = snz_transform(a);
    writeln!(
        out,
        "snz_zg_nodes: {}",
        explore(&mut ZoneGraph::new(&s)).order.len()
    )?;
    Ok(())
}

fn write_file(p: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(p, text).map_err(|source| CliError::Write {
        path: p.to_path_buf(),
        source,
    })
}

fn emit(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => write_file(p, text),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}
