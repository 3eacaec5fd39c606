//! Model generators: the `A_n` blow-up family, Fischer's protocol and random
//! automata for cross-validation.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use super::{product, AtomicConstraint, ClockId, ClockSet, Guard, Rel, Tba, Transition};
use crate::error::ModelError;

struct Builder {
    name: String,
    states: Vec<String>,
    accepting: Vec<bool>,
    clocks: Vec<String>,
    transitions: Vec<Transition>,
}

impl Builder {
    fn new(name: impl Into<String>, clocks: Vec<String>) -> Self {
        Builder {
            name: name.into(),
            states: Vec::new(),
            accepting: Vec::new(),
            clocks,
            transitions: Vec::new(),
        }
    }

    fn state(&mut self, name: impl Into<String>, accepting: bool) -> usize {
        self.states.push(name.into());
        self.accepting.push(accepting);
        self.states.len() - 1
    }

    fn trans(&mut self, t: Transition) {
        self.transitions.push(t);
    }

    fn build(self, init: usize) -> Tba {
        Tba {
            name: self.name,
            states: self.states,
            init,
            clocks: self.clocks,
            transitions: self.transitions,
            accepting: self.accepting,
        }
        .validated()
        .expect("generated automaton is well formed")
    }
}

/// The chain `R_n V_n ... R_2 V_2` over clocks `y, x1..xn`.
///
/// `R_k` resets `x_k, ..., x_1` and then `y` in sequence; `V_k` is the cycle
/// `b^k -(y<=d)-> a^k -{x_1..x_{k-1}}-> b^k` with accepting `a^k`. Each
/// `b^k` (k > 2) continues into `R_{k-1}`. Every run eventually loops in some
/// `V_k` with `y` bounded and never reset, so the language is empty.
pub fn gen_an(n: usize, d: u32) -> Result<Tba, ModelError> {
    if n < 2 {
        return Err(ModelError::Parameter(format!("A_n needs n >= 2 (got {n})")));
    }
    let mut clocks = vec!["y".to_string()];
    clocks.extend((1..=n).map(|i| format!("x{i}")));
    let y = ClockId(1);
    let x = |i: usize| ClockId(i + 1);

    let mut b = Builder::new(format!("a{n}_d{d}"), clocks);
    let mut pending_exit: Option<usize> = None;
    for k in (2..=n).rev() {
        let chain: Vec<usize> = (0..=k)
            .map(|i| b.state(format!("c{k}_{i}"), false))
            .collect();
        let cy = b.state(format!("c{k}_y"), false);
        let bk = b.state(format!("b{k}"), false);
        let ak = b.state(format!("a{k}"), true);
        if let Some(prev) = pending_exit {
            b.trans(Transition::new(prev, chain[0]));
        }
        for i in 0..k {
            b.trans(
                Transition::new(chain[i], chain[i + 1]).with_reset(ClockSet::singleton(x(k - i))),
            );
        }
        b.trans(Transition::new(chain[k], cy).with_reset(ClockSet::singleton(y)));
        b.trans(Transition::new(cy, bk));
        b.trans(
            Transition::new(bk, ak).with_guard(Guard::new(vec![AtomicConstraint::new(
                y,
                Rel::Le,
                d,
            )])),
        );
        b.trans(Transition::new(ak, bk).with_reset((1..k).map(x).collect()));
        pending_exit = Some(bk);
    }
    Ok(b.build(0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FischerVariant {
    /// Accepting sink reached iff two processes are critical together.
    Mutex,
    /// Accepting runs are those where process 1 is eventually never critical.
    Liveness,
}

impl fmt::Display for FischerVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FischerVariant::Mutex => "mutex",
            FischerVariant::Liveness => "liveness",
        })
    }
}

impl FromStr for FischerVariant {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mutex" => Ok(FischerVariant::Mutex),
            "liveness" => Ok(FischerVariant::Liveness),
            other => Err(ModelError::Parameter(format!(
                "unknown Fischer variant {other}"
            ))),
        }
    }
}

/// The processes, shared-variable automaton and property monitor of
/// Fischer's protocol, before taking the product.
pub fn fischer_network(n: usize, variant: FischerVariant) -> Result<Vec<Tba>, ModelError> {
    if n < 2 {
        return Err(ModelError::Parameter(format!(
            "Fischer needs n >= 2 (got {n})"
        )));
    }
    let mut procs = Vec::with_capacity(n + 2);
    for i in 1..=n {
        let xi = ClockId(1);
        let mut p = Builder::new(format!("P{i}"), vec![format!("x{i}")]);
        let idle = p.state("A", false);
        let req = p.state("B", false);
        let wait = p.state("C", false);
        let cs = p.state("CS", false);
        p.trans(
            Transition::new(idle, req)
                .with_reset(ClockSet::singleton(xi))
                .with_label(format!("try{i}")),
        );
        p.trans(
            Transition::new(req, wait)
                .with_guard(Guard::new(vec![AtomicConstraint::new(xi, Rel::Le, 1)]))
                .with_reset(ClockSet::singleton(xi))
                .with_label(format!("set{i}")),
        );
        p.trans(
            Transition::new(wait, cs)
                .with_guard(Guard::new(vec![AtomicConstraint::new(xi, Rel::Gt, 1)]))
                .with_label(format!("enter{i}")),
        );
        for k in (0..=n).filter(|&k| k != i) {
            p.trans(Transition::new(wait, idle).with_label(format!("fail{i}_{k}")));
        }
        p.trans(Transition::new(cs, idle).with_label(format!("exit{i}")));
        procs.push(p.build(idle));
    }

    let mut v = Builder::new("id", vec![]);
    let vals: Vec<usize> = (0..=n).map(|k| v.state(format!("id{k}"), false)).collect();
    for i in 1..=n {
        v.trans(Transition::new(vals[0], vals[0]).with_label(format!("try{i}")));
        for &vk in &vals {
            v.trans(Transition::new(vk, vals[i]).with_label(format!("set{i}")));
            v.trans(Transition::new(vk, vals[0]).with_label(format!("exit{i}")));
        }
        v.trans(Transition::new(vals[i], vals[i]).with_label(format!("enter{i}")));
        for k in (0..=n).filter(|&k| k != i) {
            v.trans(Transition::new(vals[k], vals[k]).with_label(format!("fail{i}_{k}")));
        }
    }
    procs.push(v.build(vals[0]));

    let monitor = match variant {
        FischerVariant::Mutex => {
            let mut m = Builder::new("mon", vec![]);
            let m0 = m.state("m0", false);
            let m1 = m.state("m1", false);
            let bad = m.state("bad", true);
            for i in 1..=n {
                m.trans(Transition::new(m0, m1).with_label(format!("enter{i}")));
                m.trans(Transition::new(m1, bad).with_label(format!("enter{i}")));
                m.trans(Transition::new(m1, m0).with_label(format!("exit{i}")));
            }
            m.trans(Transition::new(bad, bad));
            m.build(m0)
        }
        FischerVariant::Liveness => {
            let mut m = Builder::new("mon", vec![]);
            let w0 = m.state("w0", false);
            let w1 = m.state("w1", true);
            m.trans(Transition::new(w0, w0).with_label("enter1"));
            m.trans(Transition::new(w0, w1));
            m.build(w0)
        }
    };
    procs.push(monitor);
    Ok(procs)
}

/// Flat product of [`fischer_network`] with the monitor as accepting component.
pub fn gen_fischer(n: usize, variant: FischerVariant) -> Result<Tba, ModelError> {
    let procs = fischer_network(n, variant)?;
    let mut a = product(&procs, procs.len() - 1)?;
    a.name = format!("fischer{n}_{variant}");
    Ok(a)
}

/// Shape limits for [`random_tba`].
#[derive(Clone, Copy, Debug)]
pub struct RandomParams {
    pub max_states: usize,
    pub max_clocks: usize,
    pub max_constant: u32,
    pub max_transitions: usize,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams {
            max_states: 4,
            max_clocks: 3,
            max_constant: 2,
            max_transitions: 8,
        }
    }
}

/// A random automaton within `params`. Guards favour small constants and
/// equalities so that zero-checks and blocking clocks are common.
pub fn random_tba<R: Rng + ?Sized>(rng: &mut R, params: &RandomParams, name: &str) -> Tba {
    let n_states = rng.gen_range(1..=params.max_states);
    let n_clocks = rng.gen_range(1..=params.max_clocks);
    let n_trans = rng.gen_range(1..=params.max_transitions);
    let mut b = Builder::new(name, (0..n_clocks).map(|i| format!("c{i}")).collect());
    for q in 0..n_states {
        let acc = rng.gen_bool(0.4);
        b.state(format!("q{q}"), acc);
    }
    if !b.accepting.iter().any(|&a| a) {
        let q = rng.gen_range(0..n_states);
        b.accepting[q] = true;
    }
    const RELS: [Rel; 5] = [Rel::Lt, Rel::Le, Rel::Eq, Rel::Ge, Rel::Gt];
    for _ in 0..n_trans {
        let src = rng.gen_range(0..n_states);
        let dst = rng.gen_range(0..n_states);
        let n_atoms = rng.gen_range(0..=2);
        let atoms = (0..n_atoms)
            .map(|_| {
                AtomicConstraint::new(
                    ClockId(rng.gen_range(1..=n_clocks)),
                    RELS[rng.gen_range(0..RELS.len())],
                    rng.gen_range(0..=params.max_constant),
                )
            })
            .collect();
        let reset = (1..=n_clocks)
            .filter(|_| rng.gen_bool(0.35))
            .map(ClockId)
            .collect();
        b.trans(Transition {
            src,
            guard: Guard::new(atoms),
            reset,
            dst,
            label: None,
        });
    }
    b.build(0)
}
