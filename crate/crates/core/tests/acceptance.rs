//! Acceptance suite: one PASS/FAIL line per criterion, then a single
//! assertion over all of them. Run with
//! `cargo test -p roughlim-core --test acceptance -- --nocapture`.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::{
    broken_axioms, brute_degree, brute_r_convergent, mutants, probe_radii, q, random_sequence,
    random_space, rng, to_f64,
};
use rand::Rng;
use roughlim_core::pmspace::{gen_example31, validate_axioms, Axiom, Family};
use roughlim_core::seqlab::{is_r_convergent, minimal_roughness, rough_limit_set};
use roughlim_core::theorems::{search, SearchConfig, TheoremId};
use roughlim_core::topo::generate_topology_capped;
use roughlim_core::{Sequence, Side, Space};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let spent = start.elapsed();
    ensure(spent < limit, || format!("took {spent:?}, limit {limit:?}"))
}

fn example_reproduction() -> Verdict {
    let start = Instant::now();
    let space = gen_example31(&[2, 3]).map_err(|e| e.to_string())?;
    let seq = Sequence::periodic(vec![0, 1]).unwrap();
    let expected = [("0", "1/2"), ("2", "1/2"), ("3", "5/6")];
    for (label, degree) in expected {
        let x = space.index_of(label).unwrap();
        let got = minimal_roughness(&space, &seq, x, Side::TwoSided).unwrap();
        ensure(got == q(degree), || {
            format!("candidate {label}: degree {got}, expected {degree}")
        })?;
    }
    let lim0 = rough_limit_set(&space, &seq, &q("0"), Side::TwoSided).unwrap();
    ensure(lim0.is_empty(), || {
        format!("LIM^0 = {:?}, expected empty", space.labels_of(&lim0))
    })?;
    within(start, Duration::from_secs(1))?;
    Ok(format!(
        "degrees 1/2, 1/2, 5/6 and LIM^0 empty in {:?}",
        start.elapsed()
    ))
}

fn oracle_equivalence() -> Verdict {
    let start = Instant::now();
    let mut rng = rng(2024);
    let mut instances = 0;
    while instances < 1200 {
        let (_, space) = random_space(&mut rng, 6);
        let seq = random_sequence(&mut rng, space.len(), 3, 4);
        let x = rng.gen_range(0..space.len());
        let side = Side::ALL[rng.gen_range(0..3)];
        let r_star = brute_degree(&space, &seq, x, side);
        for r in probe_radii(&r_star) {
            let fast = is_r_convergent(&space, &seq, x, &r, side).unwrap();
            let slow = brute_r_convergent(&space, &seq, x, to_f64(&r), side);
            ensure(fast == slow, || {
                format!(
                    "disagreement at x={x} side={side} r={r}: fast {fast}, oracle {slow}\n{}",
                    space.to_json()
                )
            })?;
            instances += 1;
        }
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!(
        "{instances} instances agree in {:?}",
        start.elapsed()
    ))
}

fn theorem_suite() -> Verdict {
    let start = Instant::now();
    let config = SearchConfig {
        seed: 42,
        trials: 500,
        max_points: 6,
        ..SearchConfig::default()
    };
    let report = search(&config).map_err(|e| e.to_string())?;
    ensure(report.is_clean(), || {
        format!(
            "{} failures, first:\n{}",
            report.failures.len(),
            serde_json::to_string_pretty(&report.failures[0]).unwrap()
        )
    })?;
    let metric = &report.by_family[&Family::Metric];
    let mut least = usize::MAX;
    for id in TheoremId::ALL {
        let counts = if id.is_paired() {
            &metric[&id]
        } else {
            &report.summary[&id]
        };
        least = least.min(counts.non_vacuous());
        ensure(counts.non_vacuous() >= 20, || {
            format!("{id}: only {} non-vacuous instances", counts.non_vacuous())
        })?;
    }
    within(start, Duration::from_secs(120))?;
    Ok(format!(
        "0 failures, at least {least} non-vacuous per theorem, {:?}",
        start.elapsed()
    ))
}

fn random_instances(seed: u64, count: usize, max_points: usize) -> Vec<(Space, Sequence)> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            let (_, space) = random_space(&mut rng, max_points);
            let seq = random_sequence(&mut rng, space.len(), 3, 4);
            (space, seq)
        })
        .collect()
}

/// Every degree toward every point, plus a few fixed radii.
fn radii(space: &Space, seq: &Sequence) -> BTreeSet<roughlim_core::Rational> {
    let mut out: BTreeSet<_> = ["0", "1/4", "1", "3"].iter().map(|s| q(s)).collect();
    for x in 0..space.len() {
        for side in Side::ALL {
            out.insert(minimal_roughness(space, seq, x, side).unwrap());
        }
    }
    out
}

fn diameter_bound() -> Verdict {
    let mut checked = 0;
    let mut rng = rng(7);
    let mut instances = Vec::new();
    while instances.len() < 400 {
        let n = rng.gen_range(2..=6);
        let space = roughlim_core::pmspace::gen_random_with(&mut rng, n, Family::Constant).unwrap();
        let seq = random_sequence(&mut rng, n, 3, 4);
        instances.push((space, seq));
    }
    instances.extend(random_instances(8, 400, 6));
    for (space, seq) in &instances {
        let Some(a) = space.self_distance_summary().constant else {
            continue;
        };
        for r in radii(space, seq) {
            let lim = rough_limit_set(space, seq, &r, Side::TwoSided).unwrap();
            if lim.len() < 2 {
                continue;
            }
            let diam = space.diameter(&lim).unwrap();
            let bound = &(&q("2") * &r) + &(&q("2") * &a);
            ensure(diam <= bound, || {
                format!("diam {diam} > {bound} at r={r}\n{}", space.to_json())
            })?;
            checked += 1;
        }
    }
    ensure(checked > 0, || "no instance with |LIM^r| >= 2".into())?;
    Ok(format!("{checked} instances with |LIM^r| >= 2"))
}

fn sidedness_identity() -> Verdict {
    let mut checked = 0;
    for (space, seq) in random_instances(5, 600, 6) {
        for x in 0..space.len() {
            let [two, right, left] =
                Side::ALL.map(|s| minimal_roughness(&space, &seq, x, s).unwrap());
            ensure(two == right.clone().max(left.clone()), || {
                format!(
                    "x={x}: two {two}, right {right}, left {left}\n{}",
                    space.to_json()
                )
            })?;
            ensure(two == brute_degree(&space, &seq, x, Side::TwoSided), || {
                format!("x={x}: degree differs from direct scan")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} candidate degrees"))
}

fn closedness() -> Verdict {
    let mut checked = 0;
    for (space, seq) in random_instances(6, 300, 8) {
        let topology = generate_topology_capped(&space, 12).map_err(|e| e.to_string())?;
        for r in radii(&space, &seq) {
            let rlim = rough_limit_set(&space, &seq, &r, Side::Right).unwrap();
            ensure(topology.is_closed(&rlim).unwrap(), || {
                format!(
                    "R-LIM^{r} = {:?} not closed\n{}",
                    space.labels_of(&rlim),
                    space.to_json()
                )
            })?;
            checked += 1;
        }
    }
    let space = gen_example31(&[2, 3]).unwrap();
    let topology = generate_topology_capped(&space, 12).unwrap();
    let golden = include_str!("golden/example31_2_3_topology.json");
    ensure(
        topology.dump_json(&space).trim_end() == golden.trim_end(),
        || {
            format!(
                "topology differs from golden file:\n{}",
                topology.dump_json(&space)
            )
        },
    )?;
    Ok(format!(
        "{checked} right limit sets closed; golden topology matches"
    ))
}

fn axiom_validator() -> Verdict {
    let mut rng = rng(99);
    let mut detected = std::collections::BTreeMap::<Axiom, usize>::new();
    for i in 0..100 {
        let (family, space) = random_space(&mut rng, 6);
        let violations = validate_axioms(space.matrix()).unwrap();
        ensure(violations.is_empty(), || {
            format!("false positive #{i} ({family}): {violations:?}")
        })?;
        for target in [Axiom::P1, Axiom::P2, Axiom::P3, Axiom::P4] {
            for m in mutants(&space, target) {
                assert_eq!(broken_axioms(&m), BTreeSet::from([target]));
                let found = validate_axioms(&m).unwrap();
                ensure(found.iter().any(|v| v.axiom == target), || {
                    format!("missed {target} mutant: {m:?}")
                })?;
                ensure(
                    found
                        .iter()
                        .all(|v| v.axiom == target && v.reproduces_on(&m)),
                    || format!("spurious or non-reproducing report on {target} mutant: {found:?}"),
                )?;
                *detected.entry(target).or_default() += 1;
            }
        }
    }
    for target in [Axiom::P1, Axiom::P2, Axiom::P3, Axiom::P4] {
        ensure(detected.get(&target).copied().unwrap_or(0) >= 20, || {
            format!("corpus has too few {target} mutants: {detected:?}")
        })?;
    }
    let total: usize = detected.values().sum();
    Ok(format!(
        "{total} mutants all detected {detected:?}; 100 valid spaces clean"
    ))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 7] = [
        ("example reproduction", example_reproduction),
        ("oracle equivalence", oracle_equivalence),
        ("theorem suite", theorem_suite),
        ("diameter bound", diameter_bound),
        ("sidedness identity", sidedness_identity),
        ("closedness", closedness),
        ("axiom validator", axiom_validator),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS [{}] {name}: {detail}", i + 1),
            Err(detail) => {
                println!("FAIL [{}] {name}: {detail}", i + 1);
                failed.push(*name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
