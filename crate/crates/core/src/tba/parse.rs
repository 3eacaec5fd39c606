//! Line-oriented model format.
//!
//! ```text
//! # comment
//! automaton a1
//! clock x
//! state a init accepting
//! state b
//! trans a -> b guard x>=1
//! trans b -> a guard x<=1 reset x
//! ```
//!
//! Networks are written as a `system` with `process` entries, each either a
//! path to another model file or an inline block closed by `}`:
//!
//! ```text
//! system net
//! process left {
//!   clock x
//!   state p init
//!   trans p -> p sync go reset x
//! }
//! process monitor.tba
//! accepting-component 1
//! ```

use std::path::{Path, PathBuf};

use super::{product, AtomicConstraint, ClockId, ClockSet, Guard, Rel, Tba, Transition};
use crate::error::ModelError;

#[derive(Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    col: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &line[s..i],
                    col: s + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            col: s + 1,
        });
    }
    out
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn is_ident(s: &str) -> bool {
    !s.is_empty()
        && s != "->"
        && !s
            .chars()
            .any(|c| c.is_whitespace() || "<>=&#{}".contains(c))
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> ModelError {
    ModelError::Syntax {
        line,
        col,
        msg: msg.into(),
    }
}

struct RawAtom {
    clock: String,
    rel: Rel,
    constant: u32,
}

struct RawTrans {
    line: usize,
    src: String,
    dst: String,
    label: Option<String>,
    guard: Vec<RawAtom>,
    reset: Vec<String>,
}

#[derive(Default)]
struct FlatBuilder {
    name: Option<String>,
    clocks: Vec<String>,
    states: Vec<String>,
    init: Option<usize>,
    accepting: Vec<bool>,
    trans: Vec<RawTrans>,
}

enum Process {
    File(PathBuf),
    Inline(Tba),
}

fn parse_atom(text: &str, line: usize, col: usize) -> Result<RawAtom, ModelError> {
    let split = text
        .find(|c: char| "<>=".contains(c))
        .ok_or_else(|| syntax(line, col, format!("expected comparison in `{text}`")))?;
    let clock = &text[..split];
    if !is_ident(clock) {
        return Err(syntax(
            line,
            col,
            format!("expected clock name in `{text}`"),
        ));
    }
    let rest = &text[split..];
    let (rel, num) = if let Some(r) = rest.strip_prefix("<=") {
        (Rel::Le, r)
    } else if let Some(r) = rest.strip_prefix(">=") {
        (Rel::Ge, r)
    } else if let Some(r) = rest.strip_prefix("==") {
        (Rel::Eq, r)
    } else if let Some(r) = rest.strip_prefix('<') {
        (Rel::Lt, r)
    } else if let Some(r) = rest.strip_prefix('>') {
        (Rel::Gt, r)
    } else if let Some(r) = rest.strip_prefix('=') {
        (Rel::Eq, r)
    } else {
        return Err(syntax(line, col, format!("bad comparison in `{text}`")));
    };
    if num.starts_with('-') {
        return Err(ModelError::NegativeConstant {
            line,
            value: num.to_string(),
        });
    }
    let constant = num
        .parse::<u32>()
        .map_err(|_| syntax(line, col, format!("expected natural constant in `{text}`")))?;
    Ok(RawAtom {
        clock: clock.to_string(),
        rel,
        constant,
    })
}

fn parse_trans(tokens: &[Token<'_>], line: usize) -> Result<RawTrans, ModelError> {
    // tokens[0] is `trans`
    let src = tokens
        .get(1)
        .filter(|t| is_ident(t.text))
        .ok_or_else(|| syntax(line, tokens[0].col, "expected source state"))?;
    match tokens.get(2) {
        Some(t) if t.text == "->" => {}
        Some(t) => return Err(syntax(line, t.col, "expected `->`")),
        None => return Err(syntax(line, src.col, "expected `->`")),
    }
    let dst = tokens
        .get(3)
        .filter(|t| is_ident(t.text))
        .ok_or_else(|| syntax(line, src.col, "expected target state"))?;
    let mut raw = RawTrans {
        line,
        src: src.text.to_string(),
        dst: dst.text.to_string(),
        label: None,
        guard: Vec::new(),
        reset: Vec::new(),
    };
    let mut i = 4;
    let mut seen_guard = false;
    let mut seen_reset = false;
    while i < tokens.len() {
        let kw = tokens[i];
        match kw.text {
            "sync" => {
                let label = tokens
                    .get(i + 1)
                    .filter(|t| is_ident(t.text))
                    .ok_or_else(|| syntax(line, kw.col, "expected label after `sync`"))?;
                if raw.label.is_some() {
                    return Err(syntax(line, kw.col, "duplicate `sync`"));
                }
                raw.label = Some(label.text.to_string());
                i += 2;
            }
            "guard" => {
                if seen_guard {
                    return Err(syntax(line, kw.col, "duplicate `guard`"));
                }
                seen_guard = true;
                let mut j = i + 1;
                let mut text = String::new();
                while j < tokens.len() && !matches!(tokens[j].text, "sync" | "reset" | "guard") {
                    text.push_str(tokens[j].text);
                    j += 1;
                }
                if text.is_empty() {
                    return Err(syntax(line, kw.col, "expected constraint after `guard`"));
                }
                let col = tokens[i + 1].col;
                if text != "true" {
                    for atom in text.split('&') {
                        raw.guard.push(parse_atom(atom, line, col)?);
                    }
                }
                i = j;
            }
            "reset" => {
                if seen_reset {
                    return Err(syntax(line, kw.col, "duplicate `reset`"));
                }
                seen_reset = true;
                let mut j = i + 1;
                while j < tokens.len() && !matches!(tokens[j].text, "sync" | "reset" | "guard") {
                    if !is_ident(tokens[j].text) {
                        return Err(syntax(line, tokens[j].col, "expected clock name"));
                    }
                    raw.reset.push(tokens[j].text.to_string());
                    j += 1;
                }
                i = j;
            }
            other => {
                return Err(syntax(line, kw.col, format!("unexpected `{other}`")));
            }
        }
    }
    Ok(raw)
}

impl FlatBuilder {
    fn is_empty(&self) -> bool {
        self.clocks.is_empty() && self.states.is_empty() && self.trans.is_empty()
    }

    /// Handles a flat-automaton directive; returns false if the keyword is not one.
    fn directive(&mut self, tokens: &[Token<'_>], line: usize) -> Result<bool, ModelError> {
        let kw = tokens[0];
        match kw.text {
            "automaton" => {
                let name = tokens
                    .get(1)
                    .filter(|t| is_ident(t.text))
                    .ok_or_else(|| syntax(line, kw.col, "expected automaton name"))?;
                self.name = Some(name.text.to_string());
            }
            "clock" => {
                if tokens.len() < 2 {
                    return Err(syntax(line, kw.col, "expected clock name"));
                }
                for t in &tokens[1..] {
                    if !is_ident(t.text) {
                        return Err(syntax(line, t.col, "expected clock name"));
                    }
                    if self.clocks.iter().any(|c| c == t.text) {
                        return Err(ModelError::DuplicateClock(t.text.to_string()));
                    }
                    self.clocks.push(t.text.to_string());
                }
            }
            "state" => {
                let name = tokens
                    .get(1)
                    .filter(|t| is_ident(t.text))
                    .ok_or_else(|| syntax(line, kw.col, "expected state name"))?;
                if self.states.iter().any(|s| s == name.text) {
                    return Err(ModelError::DuplicateState(name.text.to_string()));
                }
                let mut acc = false;
                for t in &tokens[2..] {
                    match t.text {
                        "init" => {
                            if self.init.is_some() {
                                return Err(syntax(line, t.col, "initial state already declared"));
                            }
                            self.init = Some(self.states.len());
                        }
                        "accepting" => acc = true,
                        other => return Err(syntax(line, t.col, format!("unexpected `{other}`"))),
                    }
                }
                self.states.push(name.text.to_string());
                self.accepting.push(acc);
            }
            "trans" => self.trans.push(parse_trans(tokens, line)?),
            _ => return Ok(false),
        }
        Ok(true)
    }

    fn build(self, default_name: &str) -> Result<Tba, ModelError> {
        if self.states.is_empty() {
            return Err(ModelError::NoStates);
        }
        let state = |name: &str, line: usize| {
            self.states
                .iter()
                .position(|s| s == name)
                .ok_or_else(|| ModelError::UnknownState {
                    line,
                    name: name.to_string(),
                })
        };
        let clock = |name: &str, line: usize| {
            self.clocks
                .iter()
                .position(|c| c == name)
                .map(|i| ClockId(i + 1))
                .ok_or_else(|| ModelError::UnknownClock {
                    line,
                    name: name.to_string(),
                })
        };
        let mut transitions = Vec::with_capacity(self.trans.len());
        for raw in &self.trans {
            let mut atoms = Vec::with_capacity(raw.guard.len());
            for a in &raw.guard {
                atoms.push(AtomicConstraint::new(
                    clock(&a.clock, raw.line)?,
                    a.rel,
                    a.constant,
                ));
            }
            let mut reset = ClockSet::empty();
            for r in &raw.reset {
                reset.insert(clock(r, raw.line)?);
            }
            transitions.push(Transition {
                src: state(&raw.src, raw.line)?,
                guard: Guard::new(atoms),
                reset,
                dst: state(&raw.dst, raw.line)?,
                label: raw.label.clone(),
            });
        }
        Tba {
            name: self.name.unwrap_or_else(|| default_name.to_string()),
            states: self.states,
            init: self.init.unwrap_or(0),
            clocks: self.clocks,
            transitions,
            accepting: self.accepting,
        }
        .validated()
    }
}

/// Parses a model (flat automaton or network) resolving `process <file>`
/// entries relative to `base`.
pub fn parse_model(text: &str, base: Option<&Path>) -> Result<Tba, ModelError> {
    let lines: Vec<&str> = text.lines().collect();
    let mut flat = FlatBuilder::default();
    let mut system: Option<String> = None;
    let mut processes: Vec<Process> = Vec::new();
    let mut acc_component: Option<usize> = None;
    let mut i = 0;
    while i < lines.len() {
        let lineno = i + 1;
        let tokens = tokenize(strip_comment(lines[i]));
        i += 1;
        if tokens.is_empty() {
            continue;
        }
        let kw = tokens[0];
        match kw.text {
            "system" => {
                let name = tokens
                    .get(1)
                    .filter(|t| is_ident(t.text))
                    .ok_or_else(|| syntax(lineno, kw.col, "expected system name"))?;
                system = Some(name.text.to_string());
            }
            "process" => {
                let arg = tokens
                    .get(1)
                    .ok_or_else(|| syntax(lineno, kw.col, "expected process file or block"))?;
                if tokens.last().map(|t| t.text) == Some("{") {
                    let name = if tokens.len() == 3 {
                        arg.text.to_string()
                    } else {
                        format!("p{}", processes.len())
                    };
                    let mut inner = FlatBuilder::default();
                    let mut closed = false;
                    while i < lines.len() {
                        let ln = i + 1;
                        let toks = tokenize(strip_comment(lines[i]));
                        i += 1;
                        if toks.is_empty() {
                            continue;
                        }
                        if toks[0].text == "}" {
                            closed = true;
                            break;
                        }
                        if !inner.directive(&toks, ln)? {
                            return Err(syntax(
                                ln,
                                toks[0].col,
                                format!("unexpected `{}` inside process block", toks[0].text),
                            ));
                        }
                    }
                    if !closed {
                        return Err(syntax(lineno, kw.col, "unterminated process block"));
                    }
                    processes.push(Process::Inline(inner.build(&name)?));
                } else {
                    let path = match base {
                        Some(dir) => dir.join(arg.text),
                        None => PathBuf::from(arg.text),
                    };
                    processes.push(Process::File(path));
                }
            }
            "accepting-component" => {
                let idx = tokens
                    .get(1)
                    .and_then(|t| t.text.parse::<usize>().ok())
                    .ok_or_else(|| syntax(lineno, kw.col, "expected component index"))?;
                acc_component = Some(idx);
            }
            _ => {
                if !flat.directive(&tokens, lineno)? {
                    return Err(syntax(
                        lineno,
                        kw.col,
                        format!("unknown directive `{}`", kw.text),
                    ));
                }
            }
        }
    }

    if system.is_none() && processes.is_empty() {
        return flat.build("model");
    }
    if !flat.is_empty() {
        return Err(ModelError::Invalid(
            "a system may only contain process entries".into(),
        ));
    }
    let mut tbas = Vec::with_capacity(processes.len());
    for p in processes {
        match p {
            Process::Inline(t) => tbas.push(t),
            Process::File(path) => tbas.push(parse_model_file(&path)?),
        }
    }
    if tbas.is_empty() {
        return Err(ModelError::NoStates);
    }
    let mut net = product(&tbas, acc_component.unwrap_or(tbas.len() - 1))?;
    if let Some(name) = system {
        net.name = name;
    }
    Ok(net)
}

/// Parses a self-contained model text.
pub fn parse_tba(text: &str) -> Result<Tba, ModelError> {
    parse_model(text, None)
}

pub fn parse_model_file(path: &Path) -> Result<Tba, ModelError> {
    let text = std::fs::read_to_string(path).map_err(|source| ModelError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut tba = parse_model(&text, path.parent())?;
    if tba.name == "model" {
        if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
            tba.name = stem.to_string();
        }
    }
    Ok(tba)
}
