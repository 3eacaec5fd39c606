use std::fmt::Write;

use super::{Bound, BoundValue};
use crate::tba::{ClockSet, Guard, Rel, Transition};

fn scalar<T: BoundValue>(c: u32) -> T {
    T::from(c).expect("constant fits the bound scalar")
}

/// A raw, possibly non-canonical and possibly empty, difference bound matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dbm<T> {
    dim: usize,
    m: Vec<Bound<T>>,
}

impl<T: BoundValue> Dbm<T> {
    /// Only `x_i >= 0` for every clock.
    pub fn unconstrained(clocks: usize) -> Self {
        let dim = clocks + 1;
        let mut m = vec![Bound::Infinite; dim * dim];
        for i in 0..dim {
            m[i * dim + i] = Bound::zero();
            m[i] = Bound::zero();
        }
        Dbm { dim, m }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Bound<T> {
        self.m[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, b: Bound<T>) {
        self.m[i * self.dim + j] = b;
    }

    /// Tightens `m[i][j]` to `b` if that is stronger.
    pub fn constrain(&mut self, i: usize, j: usize, b: Bound<T>) {
        if b < self.get(i, j) {
            self.set(i, j, b);
        }
    }

    /// All-pairs shortest-path closure; `None` when the constraints are unsatisfiable.
    pub fn canonical(mut self) -> Option<Zone<T>> {
        let n = self.dim;
        for k in 0..n {
            for i in 0..n {
                let ik = self.m[i * n + k];
                if !ik.is_finite() {
                    continue;
                }
                for j in 0..n {
                    let cand = ik + self.m[k * n + j];
                    if cand < self.m[i * n + j] {
                        self.m[i * n + j] = cand;
                    }
                }
                if self.m[i * n + i] < Bound::zero() {
                    return None;
                }
            }
        }
        Some(Zone { dbm: self })
    }
}

/// A canonical, nonempty zone.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Zone<T = i32> {
    dbm: Dbm<T>,
}

impl<T: BoundValue> Zone<T> {
    /// The single valuation with every clock at 0.
    pub fn origin(clocks: usize) -> Self {
        let dim = clocks + 1;
        Zone {
            dbm: Dbm {
                dim,
                m: vec![Bound::zero(); dim * dim],
            },
        }
    }

    /// All valuations.
    pub fn universe(clocks: usize) -> Self {
        Zone {
            dbm: Dbm::unconstrained(clocks),
        }
    }

    pub fn dim(&self) -> usize {
        self.dbm.dim
    }

    pub fn clock_count(&self) -> usize {
        self.dbm.dim - 1
    }

    pub fn get(&self, i: usize, j: usize) -> Bound<T> {
        self.dbm.get(i, j)
    }

    pub fn as_dbm(&self) -> &Dbm<T> {
        &self.dbm
    }

    pub fn into_dbm(self) -> Dbm<T> {
        self.dbm
    }

    /// Intersection with `x_i - x_j (<|<=) b`, kept canonical in O(n^2).
    pub fn constrain(&self, i: usize, j: usize, b: Bound<T>) -> Option<Zone<T>> {
        if (b + self.get(j, i)) < Bound::zero() {
            return None;
        }
        if b >= self.get(i, j) {
            return Some(self.clone());
        }
        let n = self.dim();
        let mut out = self.dbm.clone();
        out.set(i, j, b);
        for k in 0..n {
            let ki = self.get(k, i);
            if !ki.is_finite() {
                continue;
            }
            let via = ki + b;
            for l in 0..n {
                let cand = via + self.get(j, l);
                if cand < out.get(k, l) {
                    out.set(k, l, cand);
                }
            }
        }
        Some(Zone { dbm: out })
    }

    /// Delay closure: `{ v + d | v in Z, d >= 0 }`.
    pub fn up(&self) -> Zone<T> {
        let mut out = self.dbm.clone();
        for i in 1..out.dim {
            out.set(i, 0, Bound::Infinite);
        }
        Zone { dbm: out }
    }

    pub fn and_guard(&self, g: &Guard) -> Option<Zone<T>> {
        let mut z = self.clone();
        for a in &g.atoms {
            let x = a.clock.0;
            let c: T = scalar(a.constant);
            z = match a.rel {
                Rel::Lt => z.constrain(x, 0, Bound::lt(c))?,
                Rel::Le => z.constrain(x, 0, Bound::le(c))?,
                Rel::Eq => z
                    .constrain(x, 0, Bound::le(c))?
                    .constrain(0, x, Bound::le(-c))?,
                Rel::Ge => z.constrain(0, x, Bound::le(-c))?,
                Rel::Gt => z.constrain(0, x, Bound::lt(-c))?,
            };
        }
        Some(z)
    }

    /// Intersection with `x > 0` for every `x` in `clocks`.
    pub fn and_positive(&self, clocks: ClockSet) -> Option<Zone<T>> {
        let mut z = self.clone();
        for x in clocks.iter() {
            z = z.constrain(0, x.0, Bound::lt(T::zero()))?;
        }
        Some(z)
    }

    /// Sets every clock of `r` to 0, keeping the other clocks and their differences.
    pub fn reset(&self, r: ClockSet) -> Zone<T> {
        let mut out = self.dbm.clone();
        let n = out.dim;
        for x in r.iter() {
            let x = x.0;
            for j in 0..n {
                if j != x {
                    let row0 = out.get(0, j);
                    let col0 = out.get(j, 0);
                    out.set(x, j, row0);
                    out.set(j, x, col0);
                }
            }
            out.set(x, x, Bound::zero());
        }
        Zone { dbm: out }
    }

    /// Max-constant extrapolation: bounds above `M` are dropped and bounds
    /// below `-M` are relaxed to `(-M, <)`.
    pub fn approx(&self, max_constant: u32) -> Zone<T> {
        let m: T = scalar(max_constant);
        let n = self.dim();
        let mut out = self.dbm.clone();
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                if let Some(v) = out.get(i, j).value() {
                    if v > m {
                        out.set(i, j, Bound::Infinite);
                        changed = true;
                    } else if v < -m {
                        out.set(i, j, Bound::lt(-m));
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return self.clone();
        }
        out.canonical()
            .expect("extrapolation only relaxes a nonempty zone")
    }

    /// Symbolic successor through `t`: `approx(reset(up(Z) & guard))`.
    pub fn fire(&self, t: &Transition, max_constant: u32) -> Option<Zone<T>> {
        let slice = self.up().and_guard(&t.guard)?;
        Some(slice.reset(t.reset).approx(max_constant))
    }

    pub fn is_subset(&self, other: &Zone<T>) -> bool {
        debug_assert_eq!(self.dim(), other.dim());
        self.dbm.m.iter().zip(&other.dbm.m).all(|(a, b)| a <= b)
    }

    pub fn intersection(&self, other: &Zone<T>) -> Option<Zone<T>> {
        let mut d = self.dbm.clone();
        for (a, b) in d.m.iter_mut().zip(&other.dbm.m) {
            if *b < *a {
                *a = *b;
            }
        }
        d.canonical()
    }

    pub fn intersects(&self, other: &Zone<T>) -> bool {
        self.intersection(other).is_some()
    }

    /// Membership of a valuation given as integers scaled by `denom`
    /// (`values[i - 1]` is clock `i`).
    pub fn contains_scaled(&self, values: &[i64], denom: i64) -> bool {
        let n = self.dim();
        let val = |i: usize| if i == 0 { 0 } else { values[i - 1] };
        (0..n)
            .all(|i| (0..n).all(|j| i == j || self.get(i, j).admits_scaled(val(i) - val(j), denom)))
    }

    /// Whether the zone implies `x_i - x_j <= 0`.
    pub fn implies_le(&self, i: usize, j: usize) -> bool {
        self.get(i, j) <= Bound::zero()
    }

    /// Human-readable constraint list, e.g. `x=0 & y>=1 & x-y<=-1`.
    pub fn describe(&self, names: &[String]) -> String {
        let n = self.dim();
        let mut parts: Vec<String> = Vec::new();
        for i in 1..n {
            let name = &names[i - 1];
            let lo = self.get(0, i);
            let hi = self.get(i, 0);
            match (lo, hi) {
                (
                    Bound::Finite {
                        value: l,
                        strict: false,
                    },
                    Bound::Finite {
                        value: h,
                        strict: false,
                    },
                ) if -l == h => {
                    parts.push(format!("{name}={h}"));
                    continue;
                }
                _ => {}
            }
            if lo != Bound::zero() {
                if let Bound::Finite { value, strict } = lo {
                    parts.push(format!(
                        "{name}{}{}",
                        if strict { ">" } else { ">=" },
                        -value
                    ));
                }
            }
            if let Bound::Finite { value, strict } = hi {
                parts.push(format!("{name}{}{value}", if strict { "<" } else { "<=" }));
            }
        }
        for i in 1..n {
            for j in i + 1..n {
                let ij = self.get(i, j);
                let ji = self.get(j, i);
                let ij_derived = self.get(i, 0) + self.get(0, j);
                let ji_derived = self.get(j, 0) + self.get(0, i);
                let (xi, xj) = (&names[i - 1], &names[j - 1]);
                if let (
                    Bound::Finite {
                        value: a,
                        strict: false,
                    },
                    Bound::Finite {
                        value: b,
                        strict: false,
                    },
                ) = (ij, ji)
                {
                    if a == -b && (ij < ij_derived || ji < ji_derived) {
                        parts.push(format!("{xi}-{xj}={a}"));
                        continue;
                    }
                }
                if ij < ij_derived {
                    if let Bound::Finite { value, strict } = ij {
                        parts.push(format!(
                            "{xi}-{xj}{}{value}",
                            if strict { "<" } else { "<=" }
                        ));
                    }
                }
                if ji < ji_derived {
                    if let Bound::Finite { value, strict } = ji {
                        parts.push(format!(
                            "{xj}-{xi}{}{value}",
                            if strict { "<" } else { "<=" }
                        ));
                    }
                }
            }
        }
        if parts.is_empty() {
            return "true".into();
        }
        let mut s = String::new();
        for (k, p) in parts.iter().enumerate() {
            if k > 0 {
                s.push_str(" & ");
            }
            let _ = write!(s, "{p}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tba::{AtomicConstraint, ClockId};

    type Z = Zone<i32>;

    fn names(n: usize) -> Vec<String> {
        ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
    }

    fn guard(atoms: &[(usize, Rel, u32)]) -> Guard {
        Guard::new(
            atoms
                .iter()
                .map(|&(c, r, k)| AtomicConstraint::new(ClockId(c), r, k))
                .collect(),
        )
    }

    /// Scaled grid points (step 1/4) in [0, 5]^n.
    fn grid(n: usize) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..=20).map(move |k| {
                        let mut v = v.clone();
                        v.push(k);
                        v
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn contradictory_interval_is_empty() {
        let mut d = Dbm::<i32>::unconstrained(1);
        d.constrain(1, 0, Bound::le(1));
        d.constrain(0, 1, Bound::le(-2));
        assert!(d.canonical().is_none());
    }

    #[test]
    fn canonical_is_idempotent() {
        let z = Z::origin(2)
            .up()
            .and_guard(&guard(&[(1, Rel::Le, 3)]))
            .unwrap();
        let again = z.clone().into_dbm().canonical().unwrap();
        assert_eq!(z, again);
    }

    #[test]
    fn canonical_derives_implied_bounds() {
        // x - y <= 0, y <= 3
        let mut d = Dbm::<i32>::unconstrained(2);
        d.constrain(1, 2, Bound::le(0));
        d.constrain(2, 0, Bound::le(3));
        let raw = d.clone();
        let z = d.canonical().unwrap();
        assert_eq!(z.get(1, 0), Bound::le(3));
        // membership agrees with the raw constraint system on a 1/4 grid
        for v in grid(2) {
            let raw_ok = (0..3).all(|i| {
                (0..3).all(|j| {
                    let val = |k: usize| if k == 0 { 0 } else { v[k - 1] };
                    i == j || raw.get(i, j).admits_scaled(val(i) - val(j), 4)
                })
            });
            assert_eq!(raw_ok, z.contains_scaled(&v, 4), "{v:?}");
        }
    }

    #[test]
    fn up_examples() {
        let o = Z::origin(2).up();
        assert_eq!(o.describe(&names(2)), "x-y=0");
        let x_ge_1 = Z::universe(1)
            .and_guard(&guard(&[(1, Rel::Ge, 1)]))
            .unwrap();
        assert_eq!(x_ge_1.up(), x_ge_1);
    }

    #[test]
    fn up_from_offset_point_matches_delay_oracle() {
        // x = 0, y = 1
        let z = Z::origin(2)
            .up()
            .and_guard(&guard(&[(2, Rel::Eq, 1)]))
            .unwrap()
            .reset(ClockSet::singleton(ClockId(1)));
        assert_eq!(z.describe(&names(2)), "x=0 & y=1");
        let up = z.up();
        for v in grid(2) {
            // some delay d (on the grid) with v - d in z
            let reachable = (0..=20).any(|d| {
                let back: Vec<i64> = v.iter().map(|&c| c - d).collect();
                back.iter().all(|&c| c >= 0) && z.contains_scaled(&back, 4)
            });
            assert_eq!(reachable, up.contains_scaled(&v, 4), "{v:?}");
        }
        assert_eq!(up.describe(&names(2)), "y>=1 & x-y=-1");
    }

    #[test]
    fn and_guard_examples() {
        let diag = Z::origin(2).up();
        let pinched = diag
            .and_guard(&guard(&[(1, Rel::Le, 1), (2, Rel::Ge, 1)]))
            .unwrap();
        assert_eq!(pinched.describe(&names(2)), "x=1 & y=1");
        assert_eq!(diag.and_guard(&Guard::tt()).unwrap(), diag);
        let ge2 = Z::universe(1)
            .and_guard(&guard(&[(1, Rel::Ge, 2)]))
            .unwrap();
        assert!(ge2.and_guard(&guard(&[(1, Rel::Lt, 2)])).is_none());
    }

    #[test]
    fn reset_examples() {
        let diag = Z::origin(2).up();
        let r = diag.reset(ClockSet::singleton(ClockId(1)));
        assert_eq!(r.describe(&names(2)), "x=0");
        assert!(r.get(0, 2) == Bound::zero());
        assert_eq!(diag.reset(ClockSet::empty()), diag);
        let p = diag
            .and_guard(&guard(&[(1, Rel::Eq, 1)]))
            .unwrap()
            .reset(ClockSet::singleton(ClockId(1)))
            .up()
            .and_guard(&guard(&[(1, Rel::Eq, 1)]))
            .unwrap();
        assert_eq!(p.describe(&names(2)), "x=1 & y=2");
        let q = p.reset(ClockSet::singleton(ClockId(2)));
        assert_eq!(q.describe(&names(2)), "x=1 & y=0");
    }

    #[test]
    fn approx_examples() {
        let ge5 = Z::universe(1)
            .and_guard(&guard(&[(1, Rel::Ge, 5)]))
            .unwrap();
        let a = ge5.approx(2);
        assert_eq!(a.describe(&names(1)), "x>2");
        let small = Z::origin(2)
            .up()
            .and_guard(&guard(&[(1, Rel::Le, 2)]))
            .unwrap();
        assert_eq!(small.approx(2), small);
        assert_eq!(a.approx(2), a);
        assert!(ge5.is_subset(&a));
    }

    #[test]
    fn fire_examples() {
        let a1 = crate::tba::fixtures::a1();
        let z0 = Z::origin(1);
        let zb = z0.fire(&a1.transitions[0], 1).unwrap();
        assert_eq!(zb.describe(&a1.clocks), "x>=1");
        let za = zb.fire(&a1.transitions[1], 1).unwrap();
        assert_eq!(za, z0);
        let dead = Transition::new(0, 0).with_guard(guard(&[(1, Rel::Gt, 0), (1, Rel::Lt, 1)]));
        assert!(z0.reset(ClockSet::empty()).and_guard(&dead.guard).is_none());
        let impossible =
            Transition::new(0, 0).with_guard(guard(&[(1, Rel::Gt, 2), (1, Rel::Lt, 1)]));
        assert!(z0.fire(&impossible, 2).is_none());
    }

    #[test]
    fn generic_over_scalar() {
        let a1 = crate::tba::fixtures::a1();
        let z16 = Zone::<i16>::origin(1).fire(&a1.transitions[0], 1).unwrap();
        let z64 = Zone::<i64>::origin(1).fire(&a1.transitions[0], 1).unwrap();
        assert_eq!(z16.describe(&a1.clocks), z64.describe(&a1.clocks));
    }
}
