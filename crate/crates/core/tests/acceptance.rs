//! Acceptance checks, one line per criterion. Run with
//! `cargo test --test acceptance`; `TBA_CHECK_SEED` fixes the random corpus.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tbacheck::emptiness::{check, validate_lasso, Algorithm, CheckOptions, Outcome};
use tbacheck::graph::{explore, Graph, GuessingZoneGraph, ZoneGraph};
use tbacheck::oracle::{closure_sets, rg_check};
use tbacheck::tba::gen::{gen_an, gen_fischer, random_tba, FischerVariant, RandomParams};
use tbacheck::tba::{fixtures, snz_transform, AtomicConstraint, Guard, Rel};
use tbacheck::{Bound, ClockId, ClockSet, Tba, Transition, Zone};

const SEARCHES: [Algorithm; 3] = [Algorithm::Optimized, Algorithm::Gzg, Algorithm::Snz];

fn seed() -> u64 {
    std::env::var("TBA_CHECK_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(2024)
}

fn fischers() -> Vec<Tba> {
    let mut out = Vec::new();
    for n in [2, 3] {
        for v in [FischerVariant::Mutex, FischerVariant::Liveness] {
            out.push(gen_fischer(n, v).unwrap());
        }
    }
    out
}

fn test_models() -> Vec<Tba> {
    let mut out = fixtures::all();
    out.extend((2..=6).map(|n| gen_an(n, 1).unwrap()));
    out.extend(fischers());
    out
}

fn random_corpus(count: usize) -> Vec<Tba> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed());
    let p = RandomParams::default();
    (0..count)
        .map(|i| random_tba(&mut rng, &p, &format!("r{i}")))
        .collect()
}

fn verdict(a: &Tba, algo: Algorithm) -> Result<bool, String> {
    check(a, algo, &CheckOptions::default())
        .map(|v| v.outcome.is_empty())
        .map_err(|e| format!("{} {algo}: {e}", a.name))
}

fn within(t: Duration, limit: Duration, what: &str) -> Result<(), String> {
    if t > limit {
        return Err(format!("{what} took {t:?}, limit {limit:?}"));
    }
    Ok(())
}

fn fixture_verdicts() -> Result<String, String> {
    let start = Instant::now();
    let expect = [false, true, false];
    for (a, empty) in fixtures::all().iter().zip(expect) {
        for algo in Algorithm::ALL {
            if verdict(a, algo)? != empty {
                return Err(format!("{} under {algo}: expected empty = {empty}", a.name));
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(1), "fixtures")?;
    Ok("A1 NonEmpty, A2 Empty, A3 NonEmpty under all four algorithms".into())
}

fn blowup() -> Result<String, String> {
    let start = Instant::now();
    let mut zg = Vec::new();
    let mut b2 = Vec::new();
    for n in 2..=8 {
        let a = gen_an(n, 1).unwrap();
        zg.push(explore(&mut ZoneGraph::new(&a)).order.len());
        let s = snz_transform(&a);
        let mut g = ZoneGraph::new(&s);
        let ex = explore(&mut g);
        let at_b2 = ex
            .order
            .iter()
            .filter(|&&v| s.states[g.node(v).state] == "b2")
            .count();
        if at_b2 < 1 << (n - 1) {
            return Err(format!(
                "snz(A_{n}) has {at_b2} zones at b2, below {}",
                1 << (n - 1)
            ));
        }
        b2.push(at_b2);
    }
    within(start.elapsed(), Duration::from_secs(30), "A_n family")?;
    let diffs: Vec<i64> = zg.windows(2).map(|w| w[1] as i64 - w[0] as i64).collect();
    let (lo, hi) = (diffs.iter().min().unwrap(), diffs.iter().max().unwrap());
    if hi - lo > 2 {
        return Err(format!(
            "ZG(A_n) sizes {zg:?} are not affine (differences {diffs:?}); snz b2 zones {b2:?} meet 2^(n-1)"
        ));
    }
    Ok(format!("ZG(A_n) sizes {zg:?}; snz b2 zones {b2:?}"))
}

fn gzg_bound() -> Result<String, String> {
    let mut worst = 0.0f64;
    for a in test_models() {
        let z = explore(&mut ZoneGraph::new(&a)).order.len();
        let g = explore(&mut GuessingZoneGraph::new(&a)).order.len();
        let bound = z * (a.clock_count() + 1);
        if g > bound {
            return Err(format!(
                "{}: |GZG| = {g} > {z} * {}",
                a.name,
                a.clock_count() + 1
            ));
        }
        worst = worst.max(g as f64 / bound as f64);
    }
    Ok(format!("largest |GZG| / bound ratio {worst:.2}"))
}

fn oracle_equivalence() -> Result<String, String> {
    let start = Instant::now();
    let corpus = random_corpus(600);
    let mut nonempty = 0;
    for a in &corpus {
        let o = rg_check(a)
            .map_err(|e| format!("{}: {e}", a.name))?
            .is_empty();
        nonempty += usize::from(!o);
        for algo in SEARCHES {
            if verdict(a, algo)? != o {
                return Err(format!(
                    "{} {algo} disagrees with the oracle (oracle empty = {o})\n{a}",
                    a.name
                ));
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(300), "random corpus")?;
    Ok(format!(
        "{} automata (seed {}), {nonempty} non-empty, no disagreements",
        corpus.len(),
        seed()
    ))
}

fn zero_cost() -> Result<String, String> {
    let mut models = fischers();
    models.extend((2..=8).map(|n| gen_an(n, 1).unwrap()));
    for a in &models {
        let v =
            check(a, Algorithm::Optimized, &CheckOptions::default()).map_err(|e| e.to_string())?;
        if v.stats.gzg_nodes_expanded != 0 {
            return Err(format!(
                "{}: gzg_nodes_expanded = {}",
                a.name, v.stats.gzg_nodes_expanded
            ));
        }
        if a.name.ends_with("mutex") {
            let z = explore(&mut ZoneGraph::new(a)).order.len();
            if v.outcome != Outcome::Empty || v.stats.nodes_visited != z {
                return Err(format!(
                    "{}: {:?}, visited {} vs |ZG| = {z}",
                    a.name, v.outcome, v.stats.nodes_visited
                ));
            }
        }
    }
    Ok(format!("{} models, no guessing nodes built", models.len()))
}

fn random_zone(rng: &mut ChaCha8Rng, n: usize, range: i32) -> Zone {
    loop {
        let mut z = if rng.gen_bool(0.5) {
            Zone::origin(n).up()
        } else {
            Zone::universe(n)
        };
        let mut ok = true;
        for _ in 0..rng.gen_range(0..6) {
            let i = rng.gen_range(0..=n);
            let j = rng.gen_range(0..=n);
            if i == j {
                continue;
            }
            let v = rng.gen_range(-range..=range);
            let b = if rng.gen_bool(0.5) {
                Bound::le(v)
            } else {
                Bound::lt(v)
            };
            match z.constrain(i, j, b) {
                Some(next) => z = next,
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return z;
        }
    }
}

fn random_transition(rng: &mut ChaCha8Rng, n: usize) -> Transition {
    let rels = [Rel::Lt, Rel::Le, Rel::Eq, Rel::Ge, Rel::Gt];
    let atoms = (0..rng.gen_range(0..3))
        .map(|_| {
            AtomicConstraint::new(
                ClockId(rng.gen_range(1..=n)),
                rels[rng.gen_range(0..rels.len())],
                rng.gen_range(0..=3),
            )
        })
        .collect();
    let reset: ClockSet = (1..=n).filter(|_| rng.gen_bool(0.3)).map(ClockId).collect();
    Transition::new(0, 0)
        .with_guard(Guard::new(atoms))
        .with_reset(reset)
}

fn invariants() -> Result<String, String> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed() ^ 0x5eed);
    for k in 0..1000 {
        let n = rng.gen_range(1..=4);
        let m = rng.gen_range(0..=3);
        let z = random_zone(&mut rng, n, 5);
        if z.as_dbm().clone().canonical().as_ref() != Some(&z) {
            return Err(format!("zone {k}: canonical form not idempotent"));
        }
        let a = z.approx(m);
        if a.approx(m) != a || !z.is_subset(&a) {
            return Err(format!("zone {k}: approx not idempotent or not extensive"));
        }
        let t = random_transition(&mut rng, n);
        let smaller = random_zone(&mut rng, n, 5).intersection(&z);
        if let Some(s) = smaller {
            match (s.fire(&t, m), z.fire(&t, m)) {
                (Some(fs), Some(fz)) if !fs.is_subset(&fz) => {
                    return Err(format!("zone {k}: fire not monotone"))
                }
                (Some(_), None) => return Err(format!("zone {k}: fire not monotone")),
                _ => {}
            }
        }
    }

    let mut models = test_models();
    models.extend(random_corpus(200));
    let mut zones = 0;
    for a in &models {
        let mut zg = ZoneGraph::new(a);
        for v in explore(&mut zg).order {
            zones += 1;
            if !zg.node(v).zone.orders_clocks() {
                return Err(format!("{}: ZG zone does not order clocks", a.name));
            }
        }
        let mut gzg = GuessingZoneGraph::new(a);
        for v in explore(&mut gzg).order {
            zones += 1;
            let w = gzg.node(v);
            if !w.zone.orders_clocks() {
                return Err(format!("{}: GZG zone does not order clocks", a.name));
            }
            let y = w.guess.expect("guessing node");
            for hi in y.iter() {
                for lo in a.clock_ids() {
                    if w.zone.implies_le(lo.index(), hi.index()) && !y.contains(lo) {
                        return Err(format!(
                            "{}: guess of {} not downward closed",
                            a.name,
                            w.describe(a)
                        ));
                    }
                }
            }
        }
    }

    for k in 0..200 {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(0..=2u32);
        let z = random_zone(&mut rng, n, 3);
        let a = z.approx(m);
        let (dregions, regions) = closure_sets(&z, m).map_err(|e| e.to_string())?;
        if let Some(d) = dregions.iter().find(|d| !d.zone.is_subset(&a)) {
            return Err(format!(
                "zone {k} (M = {m}): d-region {:?} outside approx",
                d.zone
            ));
        }
        let (_, around_approx) = closure_sets(&a, m).map_err(|e| e.to_string())?;
        if around_approx.iter().any(|r| !regions.contains(r)) {
            return Err(format!(
                "zone {k} (M = {m}): approx leaves the region closure"
            ));
        }
    }
    within(
        start.elapsed(),
        Duration::from_secs(120),
        "invariant suites",
    )?;
    Ok(format!(
        "1000 random zones, {zones} reachable nodes, 200 inclusion chains"
    ))
}

fn witnesses() -> Result<String, String> {
    let mut models = test_models();
    models.extend(random_corpus(300));
    let mut checked = 0;
    for a in &models {
        for algo in SEARCHES {
            let v = check(a, algo, &CheckOptions::with_witness())
                .map_err(|e| format!("{} {algo}: {e}", a.name))?;
            if let Outcome::NonEmpty(rule) = v.outcome {
                let lasso = v
                    .witness
                    .ok_or_else(|| format!("{} {algo}: no witness", a.name))?;
                validate_lasso(a, &lasso, rule).map_err(|e| format!("{} {algo}: {e}", a.name))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} lassos replayed"))
}

type Criterion = (&'static str, fn() -> Result<String, String>);

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 fixture verdicts", fixture_verdicts),
        ("2 zone blowup of the strongly non-Zeno transform", blowup),
        ("3 guessing zone graph size bound", gzg_bound),
        ("4 agreement with the region graph", oracle_equivalence),
        ("5 no guessing nodes on zero-check-free models", zero_cost),
        ("6 structural invariants", invariants),
        ("7 witness validity", witnesses),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let (tag, detail) = match run() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "[{tag}] criterion {name}: {detail} ({:.2?})",
            start.elapsed()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
