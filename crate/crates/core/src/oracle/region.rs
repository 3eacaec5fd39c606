use crate::tba::{ClockId, ClockSet, Guard};
use crate::zone::Bound as B;
use crate::{Bound, Dbm, Zone};

/// Where one clock sits relative to the integers up to `M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClockPart {
    /// `value` is the integer part; `frac_zero` says whether the clock is exactly on it.
    Int { value: u32, frac_zero: bool },
    /// Strictly above `M`.
    Above,
}

/// A region: the integral data of each clock plus the order of the nonzero
/// fractional parts of the clocks that are at most `M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Region {
    /// `parts[i - 1]` is clock `i`.
    pub parts: Vec<ClockPart>,
    /// Clocks with a nonzero fractional part, grouped by equal fractional
    /// part, in increasing order.
    pub classes: Vec<ClockSet>,
}

fn clock(i: usize) -> ClockId {
    ClockId(i + 1)
}

fn slot(x: ClockId) -> usize {
    x.0 - 1
}

impl Region {
    pub fn origin(clocks: usize) -> Self {
        Region {
            parts: vec![
                ClockPart::Int {
                    value: 0,
                    frac_zero: true
                };
                clocks
            ],
            classes: Vec::new(),
        }
    }

    pub fn clock_count(&self) -> usize {
        self.parts.len()
    }

    pub fn part(&self, x: ClockId) -> ClockPart {
        self.parts[slot(x)]
    }

    pub fn is_zero(&self, x: ClockId) -> bool {
        self.part(x)
            == ClockPart::Int {
                value: 0,
                frac_zero: true,
            }
    }

    pub fn is_above(&self, x: ClockId) -> bool {
        self.part(x) == ClockPart::Above
    }

    /// Common denominator of [`Region::representative`].
    pub fn denominator(&self) -> i64 {
        self.parts.len() as i64 + 1
    }

    /// A valuation inside the region, scaled by [`Region::denominator`]:
    /// the k-th fractional class sits at `(k + 1) / (|X| + 1)`.
    pub fn representative(&self, max_constant: u32) -> Vec<i64> {
        let d = self.denominator();
        let mut v = vec![0i64; self.parts.len()];
        for (i, p) in self.parts.iter().enumerate() {
            v[i] = match *p {
                ClockPart::Above => (max_constant as i64 + 1) * d,
                ClockPart::Int { value, .. } => value as i64 * d,
            };
        }
        for (k, class) in self.classes.iter().enumerate() {
            for x in class.iter() {
                v[slot(x)] += k as i64 + 1;
            }
        }
        v
    }

    pub fn satisfies(&self, g: &Guard, max_constant: u32) -> bool {
        g.holds_scaled(&self.representative(max_constant), self.denominator())
    }

    /// The next region reached by letting time elapse, `None` once every
    /// clock is above `M`.
    pub fn time_successor(&self, max_constant: u32) -> Option<Region> {
        let on_int: Vec<usize> = (0..self.parts.len())
            .filter(|&i| {
                matches!(
                    self.parts[i],
                    ClockPart::Int {
                        frac_zero: true,
                        ..
                    }
                )
            })
            .collect();
        let mut next = self.clone();
        if !on_int.is_empty() {
            let mut leaving = ClockSet::empty();
            for i in on_int {
                let ClockPart::Int { value, .. } = self.parts[i] else {
                    unreachable!()
                };
                if value == max_constant {
                    next.parts[i] = ClockPart::Above;
                } else {
                    next.parts[i] = ClockPart::Int {
                        value,
                        frac_zero: false,
                    };
                    leaving.insert(clock(i));
                }
            }
            if !leaving.is_empty() {
                next.classes.insert(0, leaving);
            }
            return Some(next);
        }
        let top = next.classes.pop()?;
        for x in top.iter() {
            let ClockPart::Int { value, .. } = next.parts[slot(x)] else {
                unreachable!()
            };
            next.parts[slot(x)] = ClockPart::Int {
                value: value + 1,
                frac_zero: true,
            };
        }
        Some(next)
    }

    /// The region followed by all its time successors.
    pub fn delay_chain(&self, max_constant: u32) -> Vec<Region> {
        let mut out = vec![self.clone()];
        while let Some(n) = out.last().and_then(|r| r.time_successor(max_constant)) {
            out.push(n);
        }
        out
    }

    pub fn reset(&self, r: ClockSet) -> Region {
        let mut out = self.clone();
        for x in r.iter() {
            out.parts[slot(x)] = ClockPart::Int {
                value: 0,
                frac_zero: true,
            };
        }
        out.classes = out
            .classes
            .iter()
            .map(|c| c.difference(r))
            .filter(|c| !c.is_empty())
            .collect();
        out
    }

    /// The region as an exact zone.
    pub fn zone(&self, max_constant: u32) -> Zone {
        let n = self.parts.len();
        let m = max_constant as i32;
        let mut d = Dbm::unconstrained(n);
        let mut frac_rank = vec![None; n];
        for (k, class) in self.classes.iter().enumerate() {
            for x in class.iter() {
                frac_rank[slot(x)] = Some(k + 1);
            }
        }
        for (i, p) in self.parts.iter().enumerate() {
            let x = i + 1;
            match *p {
                ClockPart::Above => d.constrain(0, x, B::lt(-m)),
                ClockPart::Int {
                    value,
                    frac_zero: true,
                } => {
                    d.constrain(x, 0, B::le(value as i32));
                    d.constrain(0, x, B::le(-(value as i32)));
                }
                ClockPart::Int { value, .. } => {
                    d.constrain(x, 0, B::lt(value as i32 + 1));
                    d.constrain(0, x, B::lt(-(value as i32)));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let (ClockPart::Int { value: a, .. }, ClockPart::Int { value: b, .. }) =
                    (self.parts[i], self.parts[j])
                else {
                    continue;
                };
                let (fa, fb) = (frac_rank[i].unwrap_or(0), frac_rank[j].unwrap_or(0));
                let diff = a as i32 - b as i32;
                let bound: Bound = match fa.cmp(&fb) {
                    std::cmp::Ordering::Less => B::lt(diff),
                    std::cmp::Ordering::Equal => B::le(diff),
                    std::cmp::Ordering::Greater => continue,
                };
                d.constrain(i + 1, j + 1, bound);
            }
        }
        d.canonical().expect("regions are nonempty")
    }
}

/// The region containing a valuation scaled by `denom`.
pub fn region_of(values: &[i64], denom: i64, max_constant: u32) -> Region {
    let limit = max_constant as i64 * denom;
    let mut parts = Vec::with_capacity(values.len());
    let mut fracs: Vec<(i64, usize)> = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        assert!(v >= 0, "clock values are nonnegative");
        if v > limit {
            parts.push(ClockPart::Above);
            continue;
        }
        let frac = v % denom;
        parts.push(ClockPart::Int {
            value: (v / denom) as u32,
            frac_zero: frac == 0,
        });
        if frac != 0 {
            fracs.push((frac, i));
        }
    }
    fracs.sort();
    let mut classes: Vec<ClockSet> = Vec::new();
    let mut last = None;
    for (f, i) in fracs {
        if last == Some(f) {
            classes.last_mut().expect("class started").insert(clock(i));
        } else {
            classes.push(ClockSet::singleton(clock(i)));
        }
        last = Some(f);
    }
    Region { parts, classes }
}

/// Every region over `clocks` clocks for the constant `max_constant`.
pub fn all_regions(clocks: usize, max_constant: u32) -> Vec<Region> {
    let mut choices = vec![ClockPart::Above];
    for value in 0..=max_constant {
        choices.push(ClockPart::Int {
            value,
            frac_zero: true,
        });
        if value < max_constant {
            choices.push(ClockPart::Int {
                value,
                frac_zero: false,
            });
        }
    }
    let mut out = Vec::new();
    let mut parts = vec![ClockPart::Above; clocks];
    assign(&choices, &mut parts, 0, &mut out);
    out
}

fn assign(choices: &[ClockPart], parts: &mut Vec<ClockPart>, i: usize, out: &mut Vec<Region>) {
    if i == parts.len() {
        let moving: Vec<ClockId> = (0..parts.len())
            .filter(|&k| {
                matches!(
                    parts[k],
                    ClockPart::Int {
                        frac_zero: false,
                        ..
                    }
                )
            })
            .map(clock)
            .collect();
        for classes in ordered_partitions(&moving) {
            out.push(Region {
                parts: parts.clone(),
                classes,
            });
        }
        return;
    }
    for &c in choices {
        parts[i] = c;
        assign(choices, parts, i + 1, out);
    }
}

/// All ways to split `items` into a sequence of nonempty blocks.
fn ordered_partitions(items: &[ClockId]) -> Vec<Vec<ClockSet>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let n = items.len();
    let mut out = Vec::new();
    // choose the first block as a nonempty subset, recurse on the rest
    for mask in 1u32..(1 << n) {
        let first: ClockSet = (0..n)
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| items[b])
            .collect();
        let rest: Vec<ClockId> = (0..n)
            .filter(|b| mask & (1 << b) == 0)
            .map(|b| items[b])
            .collect();
        for mut tail in ordered_partitions(&rest) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// A region refined by the position of every clock difference relative to
/// the integers in `[-M, M]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DRegion {
    pub region: Region,
    pub zone: Zone,
}

/// Every d-region, obtained by splitting each region along the lines
/// `x - y = c`.
pub fn all_dregions(clocks: usize, max_constant: u32) -> Vec<DRegion> {
    let m = max_constant as i32;
    let mut out = Vec::new();
    for r in all_regions(clocks, max_constant) {
        let mut pieces = vec![r.zone(max_constant)];
        for i in 1..=clocks {
            for j in i + 1..=clocks {
                for c in -m..=m {
                    pieces = pieces
                        .into_iter()
                        .flat_map(|z| {
                            [
                                z.constrain(i, j, B::lt(c)),
                                z.constrain(i, j, B::le(c))
                                    .and_then(|z| z.constrain(j, i, B::le(-c))),
                                z.constrain(j, i, B::lt(-c)),
                            ]
                        })
                        .flatten()
                        .collect();
                }
            }
        }
        out.extend(pieces.into_iter().map(|zone| DRegion {
            region: r.clone(),
            zone,
        }));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn one_clock_m1_has_four_regions() {
        let rs = all_regions(1, 1);
        assert_eq!(rs.len(), 4);
        let zs: HashSet<String> = rs
            .iter()
            .map(|r| r.zone(1).describe(&["x".into()]))
            .collect();
        let want: HashSet<String> = ["x=0", "x>0 & x<1", "x=1", "x>1"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(zs, want);
    }

    #[test]
    fn region_counts_match_grid_bucketing() {
        for (n, m) in [(1, 2), (2, 1), (2, 2), (3, 1)] {
            let rs = all_regions(n, m);
            let denom = 2 * (n as i64 + 1);
            let top = (m as i64 + 2) * denom;
            let mut seen = HashSet::new();
            let mut v = vec![0i64; n];
            loop {
                seen.insert(region_of(&v, denom, m));
                let mut k = 0;
                while k < n {
                    v[k] += 1;
                    if v[k] <= top {
                        break;
                    }
                    v[k] = 0;
                    k += 1;
                }
                if k == n {
                    break;
                }
            }
            assert_eq!(rs.len(), seen.len(), "n={n} M={m}");
            assert_eq!(rs.iter().cloned().collect::<HashSet<_>>(), seen);
        }
        assert_eq!(all_regions(2, 1).len(), 18);
    }

    #[test]
    fn representative_round_trips() {
        for r in all_regions(3, 2) {
            let v = r.representative(2);
            assert_eq!(region_of(&v, r.denominator(), 2), r);
            assert!(r.zone(2).contains_scaled(&v, r.denominator()));
        }
    }

    #[test]
    fn equal_fractions_share_a_class() {
        let r = region_of(&[1, 1], 2, 1);
        assert_eq!(
            r.classes,
            vec![[ClockId(1), ClockId(2)].into_iter().collect()]
        );
        assert_eq!(
            r.zone(1).describe(&["x".into(), "y".into()]),
            "x>0 & x<1 & y>0 & y<1 & x-y=0"
        );
    }

    #[test]
    fn delay_chain_from_origin() {
        let chain = Region::origin(1).delay_chain(1);
        let names: Vec<String> = chain
            .iter()
            .map(|r| r.zone(1).describe(&["x".into()]))
            .collect();
        assert_eq!(names, ["x=0", "x>0 & x<1", "x=1", "x>1"]);
    }

    #[test]
    fn time_successor_is_delay_reachable() {
        for r in all_regions(2, 2) {
            if let Some(s) = r.time_successor(2) {
                assert_ne!(s, r);
                let z = r.zone(2).up();
                assert!(s.zone(2).intersects(&z));
            }
        }
    }

    #[test]
    fn regions_partition_and_dregions_refine() {
        let rs = all_regions(2, 2);
        for (i, a) in rs.iter().enumerate() {
            for b in &rs[i + 1..] {
                assert!(!a.zone(2).intersects(&b.zone(2)));
            }
        }
        let ds = all_dregions(2, 2);
        assert!(ds.len() > rs.len());
        for d in &ds {
            assert!(d.zone.is_subset(&d.region.zone(2)));
        }
    }
}
