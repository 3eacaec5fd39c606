use super::{AtomicConstraint, ClockId, ClockSet, Guard, Rel, Tba, Transition};

fn fresh(taken: &[String], base: &str) -> String {
    let mut name = base.to_string();
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// Strongly non-Zeno transformation.
///
/// Adds one clock `z` and splits every accepting state `q` into an accepting
/// copy `q_1`, reachable only with `z >= 1` (resetting `z`), and a
/// non-accepting copy `q_2` that carries `q`'s outgoing transitions. An
/// unguarded transition `q_1 -> q_2` joins the copies. An accepting initial
/// state starts in its `q_2` copy.
pub fn snz_transform(a: &Tba) -> Tba {
    let mut clocks = a.clocks.clone();
    let z_name = fresh(&clocks, "z");
    clocks.push(z_name);
    let z = ClockId(clocks.len());

    let mut states = Vec::new();
    let mut accepting = Vec::new();
    // (accepting copy, plain copy); equal for non-accepting states
    let mut copies = Vec::with_capacity(a.states.len());
    for (q, name) in a.states.iter().enumerate() {
        if a.accepting[q] {
            let all: Vec<String> = a.states.iter().chain(states.iter()).cloned().collect();
            let n1 = fresh(&all, &format!("{name}_1"));
            let n2 = fresh(&all, &format!("{name}_2"));
            states.push(n1);
            accepting.push(true);
            states.push(n2);
            accepting.push(false);
            copies.push((states.len() - 2, states.len() - 1));
        } else {
            let all: Vec<String> = states.clone();
            states.push(fresh(&all, name));
            accepting.push(false);
            copies.push((states.len() - 1, states.len() - 1));
        }
    }

    let mut transitions = Vec::new();
    for t in &a.transitions {
        let src = copies[t.src].1;
        let (acc_copy, plain_copy) = copies[t.dst];
        if a.accepting[t.dst] {
            let mut atoms = t.guard.atoms.clone();
            atoms.push(AtomicConstraint::new(z, Rel::Ge, 1));
            let mut reset = t.reset;
            reset.insert(z);
            transitions.push(Transition {
                src,
                guard: Guard::new(atoms),
                reset,
                dst: acc_copy,
                label: t.label.clone(),
            });
        }
        transitions.push(Transition {
            src,
            guard: t.guard.clone(),
            reset: t.reset,
            dst: plain_copy,
            label: t.label.clone(),
        });
    }
    for (q, &(c1, c2)) in copies.iter().enumerate() {
        if a.accepting[q] {
            transitions.push(Transition {
                src: c1,
                guard: Guard::tt(),
                reset: ClockSet::empty(),
                dst: c2,
                label: None,
            });
        }
    }

    Tba {
        name: format!("{}_snz", a.name),
        states,
        init: copies[a.init].1,
        clocks,
        transitions,
        accepting,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tba::{fixtures, gen};

    #[test]
    fn snz_of_vk_gadget_has_wk_shape() {
        // V_2 on its own: b -> a guarded y<=d, a -> b resetting x1
        let v = crate::tba::parse_tba(
            "clock y x1 x2\nstate b init\nstate a accepting\ntrans b -> a guard y<=3\ntrans a -> b reset x1\n",
        )
        .unwrap();
        let w = snz_transform(&v);
        assert_eq!(w.states, vec!["b", "a_1", "a_2"]);
        assert_eq!(w.accepting, vec![false, true, false]);
        assert_eq!(w.clocks.last().unwrap(), "z");
        let z = ClockId(4);
        let into_a1 = &w.transitions[0];
        assert_eq!((into_a1.src, into_a1.dst), (0, 1));
        assert_eq!(w.guard_string(&into_a1.guard), "y<=3 & z>=1");
        assert_eq!(into_a1.reset, ClockSet::singleton(z));
        let into_a2 = &w.transitions[1];
        assert_eq!((into_a2.src, into_a2.dst), (0, 2));
        assert_eq!(w.guard_string(&into_a2.guard), "y<=3");
        assert!(into_a2.reset.is_empty());
        let back = &w.transitions[2];
        assert_eq!((back.src, back.dst), (2, 0));
        assert_eq!(back.reset, ClockSet::singleton(ClockId(2)));
        let bridge = &w.transitions[3];
        assert_eq!((bridge.src, bridge.dst), (1, 2));
        assert!(bridge.guard.is_true() && bridge.reset.is_empty());
    }

    #[test]
    fn no_accepting_state_only_adds_a_clock() {
        let mut a = fixtures::a1();
        a.accepting = vec![false, false];
        let s = snz_transform(&a);
        assert_eq!(s.states, a.states);
        assert_eq!(s.transitions, a.transitions);
        assert_eq!(s.clocks.len(), a.clocks.len() + 1);
    }

    #[test]
    fn fresh_clock_avoids_collisions() {
        let a = crate::tba::parse_tba("clock z\nstate q init accepting\ntrans q -> q\n").unwrap();
        let s = snz_transform(&a);
        assert_eq!(s.clocks, vec!["z".to_string(), "z'".to_string()]);
    }

    #[test]
    fn counts_on_generated_family() {
        for n in 2..6 {
            let a = gen::gen_an(n, 1).unwrap();
            let s = snz_transform(&a);
            let acc = a.accepting.iter().filter(|&&b| b).count();
            assert_eq!(s.clocks.len(), a.clocks.len() + 1);
            assert_eq!(s.states.len(), a.states.len() + acc);
            let acc_names: Vec<&String> = s
                .states
                .iter()
                .zip(&s.accepting)
                .filter(|(_, &b)| b)
                .map(|(n, _)| n)
                .collect();
            assert_eq!(acc_names.len(), acc);
            assert!(acc_names.iter().all(|n| n.ends_with("_1")));
        }
    }
}
