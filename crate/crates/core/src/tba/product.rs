use std::collections::HashMap;

use super::{AtomicConstraint, ClockId, ClockSet, Guard, Tba, Transition};
use crate::error::ModelError;

/// Synchronous product of a network.
///
/// Clocks with the same name are shared. A transition carrying label `l`
/// fires jointly with one `l`-transition of every other process that uses
/// `l` somewhere; unlabeled transitions interleave. Only composite states
/// reachable in the discrete graph are built. A composite state is accepting
/// when the local state of `accepting_component` is.
pub fn product(processes: &[Tba], accepting_component: usize) -> Result<Tba, ModelError> {
    if accepting_component >= processes.len() {
        return Err(ModelError::AcceptingComponent {
            index: accepting_component,
            count: processes.len(),
        });
    }

    let mut clocks: Vec<String> = Vec::new();
    let clock_maps: Vec<Vec<ClockId>> = processes
        .iter()
        .map(|p| {
            p.clocks
                .iter()
                .map(|name| match clocks.iter().position(|c| c == name) {
                    Some(i) => ClockId(i + 1),
                    None => {
                        clocks.push(name.clone());
                        ClockId(clocks.len())
                    }
                })
                .collect()
        })
        .collect();

    let remap_guard = |p: usize, g: &Guard| -> Vec<AtomicConstraint> {
        g.atoms
            .iter()
            .map(|a| AtomicConstraint::new(clock_maps[p][a.clock.0 - 1], a.rel, a.constant))
            .collect()
    };
    let remap_reset =
        |p: usize, r: ClockSet| -> ClockSet { r.iter().map(|c| clock_maps[p][c.0 - 1]).collect() };

    let mut labels: Vec<&str> = Vec::new();
    for p in processes {
        for t in &p.transitions {
            if let Some(l) = t.label.as_deref() {
                if !labels.contains(&l) {
                    labels.push(l);
                }
            }
        }
    }
    let participants: Vec<Vec<usize>> = labels
        .iter()
        .map(|l| {
            (0..processes.len())
                .filter(|&i| {
                    processes[i]
                        .transitions
                        .iter()
                        .any(|t| t.label.as_deref() == Some(*l))
                })
                .collect()
        })
        .collect();

    let init: Vec<usize> = processes.iter().map(|p| p.init).collect();
    let mut space = TupleSpace::default();
    space.intern(init);

    let mut transitions = Vec::new();
    let mut next_src = 0;
    while next_src < space.tuples.len() {
        let src = next_src;
        next_src += 1;
        let cur = space.tuples[src].clone();
        for (p, proc_) in processes.iter().enumerate() {
            for t in proc_
                .transitions
                .iter()
                .filter(|t| t.src == cur[p] && t.label.is_none())
            {
                let mut next = cur.clone();
                next[p] = t.dst;
                transitions.push(Transition {
                    src,
                    guard: Guard::new(remap_guard(p, &t.guard)),
                    reset: remap_reset(p, t.reset),
                    dst: space.intern(next),
                    label: None,
                });
            }
        }
        for (li, label) in labels.iter().enumerate() {
            let mut combos: Vec<Vec<(usize, &Transition)>> = vec![Vec::new()];
            for &p in &participants[li] {
                let local: Vec<&Transition> = processes[p]
                    .transitions
                    .iter()
                    .filter(|t| t.src == cur[p] && t.label.as_deref() == Some(*label))
                    .collect();
                combos = combos
                    .into_iter()
                    .flat_map(|c| {
                        local.iter().map(move |&t| {
                            let mut c = c.clone();
                            c.push((p, t));
                            c
                        })
                    })
                    .collect();
            }
            for combo in combos {
                let mut next = cur.clone();
                let mut atoms = Vec::new();
                let mut reset = ClockSet::empty();
                for (p, t) in combo {
                    next[p] = t.dst;
                    atoms.extend(remap_guard(p, &t.guard));
                    reset = reset.union(remap_reset(p, t.reset));
                }
                transitions.push(Transition {
                    src,
                    guard: Guard::new(atoms),
                    reset,
                    dst: space.intern(next),
                    label: Some(label.to_string()),
                });
            }
        }
    }
    let tuples = space.tuples;

    let states = tuples
        .iter()
        .map(|tuple| {
            tuple
                .iter()
                .enumerate()
                .map(|(p, &q)| processes[p].states[q].as_str())
                .collect::<Vec<_>>()
                .join(".")
        })
        .collect();
    let accepting = tuples
        .iter()
        .map(|tuple| processes[accepting_component].accepting[tuple[accepting_component]])
        .collect();
    let name = processes
        .iter()
        .map(|p| p.name.as_str())
        .collect::<Vec<_>>()
        .join("_x_");
    Tba {
        name,
        states,
        init: 0,
        clocks,
        transitions,
        accepting,
    }
    .validated()
}

#[derive(Default)]
struct TupleSpace {
    index: HashMap<Vec<usize>, usize>,
    tuples: Vec<Vec<usize>>,
}

impl TupleSpace {
    fn intern(&mut self, tuple: Vec<usize>) -> usize {
        if let Some(&i) = self.index.get(&tuple) {
            return i;
        }
        let i = self.tuples.len();
        self.index.insert(tuple.clone(), i);
        self.tuples.push(tuple);
        i
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tba::{fixtures, parse_tba};

    #[test]
    fn singleton_product_is_isomorphic() {
        let a = fixtures::a1();
        let p = product(std::slice::from_ref(&a), 0).unwrap();
        assert_eq!(p.states.len(), a.states.len());
        assert_eq!(p.transitions.len(), a.transitions.len());
        assert_eq!(p.clocks, a.clocks);
        assert_eq!(p.accepting, a.accepting);
        for (t, u) in p.transitions.iter().zip(&a.transitions) {
            assert_eq!(
                (t.src, t.dst, &t.guard, t.reset),
                (u.src, u.dst, &u.guard, u.reset)
            );
        }
    }

    #[test]
    fn unlabeled_loops_interleave() {
        let p1 = parse_tba("clock x\nstate p init\ntrans p -> p reset x\n").unwrap();
        let p2 = parse_tba("clock y\nstate q init accepting\ntrans q -> q guard y>=1\n").unwrap();
        let net = product(&[p1, p2], 1).unwrap();
        assert_eq!(net.states, vec!["p.q".to_string()]);
        assert_eq!(net.transitions.len(), 2);
        assert_eq!(net.clocks, vec!["x".to_string(), "y".to_string()]);
        assert!(net.accepting[0]);
    }

    #[test]
    fn shared_labels_synchronise() {
        let p1 =
            parse_tba("clock x\nstate a init\nstate b\ntrans a -> b sync go guard x>=1\n").unwrap();
        let p2 = parse_tba(
            "clock x\nstate c init\nstate d accepting\ntrans c -> d sync go reset x\ntrans c -> d sync go guard x<3\n",
        )
        .unwrap();
        let net = product(&[p1, p2], 1).unwrap();
        assert_eq!(net.clocks.len(), 1);
        assert_eq!(net.states.len(), 2);
        assert_eq!(net.transitions.len(), 2);
        let t = &net.transitions[0];
        assert_eq!(t.guard.atoms.len(), 1);
        assert_eq!(t.reset.len(), 1);
        assert_eq!(net.transitions[1].guard.atoms.len(), 2);
    }

    #[test]
    fn accepting_component_out_of_range() {
        let a = fixtures::a1();
        assert!(matches!(
            product(&[a], 1),
            Err(ModelError::AcceptingComponent { index: 1, count: 1 })
        ));
    }
}
