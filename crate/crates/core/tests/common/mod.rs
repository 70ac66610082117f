//! Independent oracles shared by the integration tests.
//!
//! Nothing here calls the library's analysis routines. Distances are read
//! straight from the matrix and converted to `f64`, and rough convergence is
//! decided from the literal ε–k definition on a finite grid of ε values.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use roughlim_core::pmspace::{gen_random_with, Axiom, Family};
use roughlim_core::{Rational, Sequence, Side, Space};

pub fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

pub fn to_f64(r: &Rational) -> f64 {
    let text = r.to_string();
    match text.split_once('/') {
        Some((n, d)) => n.parse::<f64>().unwrap() / d.parse::<f64>().unwrap(),
        None => text.parse().unwrap(),
    }
}

/// ε grid `1, 1/2, ..., 1/64`. Exact only when the gap between the degree
/// and `r` is either zero or at least 1/64.
pub const EPSILONS: [f64; 7] = [1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625];

fn nth(seq: &Sequence, n: usize) -> usize {
    let (prefix, cycle) = (seq.prefix(), seq.cycle());
    if n < prefix.len() {
        prefix[n]
    } else {
        cycle[(n - prefix.len()) % cycle.len()]
    }
}

/// `∀ε ∃k ∀n ≥ k` the side condition on `p(x_n, x) - p(x, x)` is below `r + ε`.
/// Indices are scanned to `|prefix| + 4·|cycle|`, which covers every phase.
pub fn brute_r_convergent(space: &Space, seq: &Sequence, x: usize, r: f64, side: Side) -> bool {
    let horizon = seq.prefix().len() + 4 * seq.cycle().len();
    let center = to_f64(&space.matrix()[x][x]);
    let deviation = |n: usize| {
        let d = to_f64(&space.matrix()[nth(seq, n)][x]) - center;
        match side {
            Side::TwoSided => d.abs(),
            Side::Right => d,
            Side::Left => -d,
        }
    };
    // k past the first full cycle adds nothing; later k would leave the scan empty
    let last_k = seq.prefix().len() + seq.cycle().len();
    EPSILONS
        .iter()
        .all(|&eps| (0..=last_k).any(|k| (k..horizon).all(|n| deviation(n) < r + eps)))
}

pub fn brute_limit_set(space: &Space, seq: &Sequence, r: f64, side: Side) -> BTreeSet<usize> {
    (0..space.len())
        .filter(|&x| brute_r_convergent(space, seq, x, r, side))
        .collect()
}

/// Every axiom broken somewhere in `m`, by exhaustive enumeration.
pub fn broken_axioms(m: &[Vec<Rational>]) -> BTreeSet<Axiom> {
    let n = m.len();
    let mut out = BTreeSet::new();
    for x in 0..n {
        for y in 0..n {
            if m[x][x] > m[x][y] {
                out.insert(Axiom::P1);
            }
            if x != y && m[x][x] == m[x][y] && m[x][y] == m[y][x] && m[y][y] == m[x][x] {
                out.insert(Axiom::P2);
            }
            if m[x][y] != m[y][x] {
                out.insert(Axiom::P3);
            }
            for z in 0..n {
                if m[x][y] > &(&m[x][z] + &m[z][y]) - &m[z][z] {
                    out.insert(Axiom::P4);
                }
            }
        }
    }
    out
}

pub fn random_space(rng: &mut ChaCha8Rng, max_points: usize) -> (Family, Space) {
    let family = Family::ALL[rng.gen_range(0..Family::ALL.len())];
    let n = rng.gen_range(1..=max_points);
    (family, gen_random_with(rng, n, family).unwrap())
}

pub fn random_sequence(
    rng: &mut ChaCha8Rng,
    n: usize,
    max_prefix: usize,
    max_cycle: usize,
) -> Sequence {
    let plen = rng.gen_range(0..=max_prefix);
    let clen = rng.gen_range(1..=max_cycle);
    let prefix = (0..plen).map(|_| rng.gen_range(0..n)).collect();
    let cycle = (0..clen).map(|_| rng.gen_range(0..n)).collect();
    Sequence::new(prefix, cycle).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Largest deviation on `side` over the periodic part, computed directly.
pub fn brute_degree(space: &Space, seq: &Sequence, x: usize, side: Side) -> Rational {
    let m = space.matrix();
    seq.cycle()
        .iter()
        .map(|&t| {
            let d = &m[t][x] - &m[x][x];
            match side {
                Side::TwoSided => d.abs(),
                Side::Right => d.positive_part(),
                Side::Left => (-d).positive_part(),
            }
        })
        .max()
        .unwrap()
}

/// Offsets around the exact degree used to probe the decision boundary.
pub fn probe_radii(r_star: &Rational) -> Vec<Rational> {
    ["-1", "-1/2", "-1/4", "-1/16", "0", "1/16", "1/4", "1"]
        .iter()
        .map(|o| r_star + &q(o))
        .filter(|r| !r.is_negative())
        .collect()
}

/// Single-entry or symmetric-pair mutants of a valid space, each breaking
/// exactly `target` according to [`broken_axioms`].
pub fn mutants(space: &Space, target: Axiom) -> Vec<Vec<Vec<Rational>>> {
    let base: Vec<Vec<Rational>> = space.matrix().to_vec();
    let n = base.len();
    let mut out = Vec::new();
    let mut keep = |m: Vec<Vec<Rational>>| {
        if broken_axioms(&m) == BTreeSet::from([target]) {
            out.push(m);
        }
    };
    match target {
        Axiom::P1 => {
            for x in 0..n {
                for y in (0..n).filter(|&y| y != x) {
                    // lower a symmetric pair just below p(x,x)
                    let mut m = base.clone();
                    let v = &base[x][x] - &q("1/8");
                    if !v.is_negative() {
                        m[x][y] = v.clone();
                        m[y][x] = v;
                        keep(m);
                    }
                    let mut m = base.clone();
                    m[x][x] = &base[x][y] + &q("1/8");
                    keep(m);
                }
            }
        }
        Axiom::P2 => {
            // a twin `y` of `x` collapsed onto it
            for x in 0..n {
                let twin = with_twin(&base, x);
                let mut m = twin;
                m[x][n] = base[x][x].clone();
                m[n][x] = base[x][x].clone();
                keep(m);
            }
        }
        Axiom::P3 => {
            for x in 0..n {
                for y in (0..n).filter(|&y| y != x) {
                    for delta in ["1/8", "-1/8"] {
                        let mut m = base.clone();
                        let v = &base[x][y] + &q(delta);
                        if !v.is_negative() {
                            m[x][y] = v;
                            keep(m);
                        }
                    }
                }
            }
        }
        Axiom::P4 => {
            for x in 0..n {
                for y in x + 1..n {
                    let Some(limit) = (0..n)
                        .filter(|&z| z != x && z != y)
                        .map(|z| &(&base[x][z] + &base[z][y]) - &base[z][z])
                        .min()
                    else {
                        continue;
                    };
                    let mut m = base.clone();
                    let v = &limit + &q("1/4");
                    m[x][y] = v.clone();
                    m[y][x] = v;
                    keep(m);
                }
            }
        }
    }
    out
}

/// Adds point `n` copying `x`, at distance `p(x,x) + δ` from `x`, with δ
/// small enough that the extension stays a partial metric.
fn with_twin(base: &[Vec<Rational>], x: usize) -> Vec<Vec<Rational>> {
    let n = base.len();
    let delta = (0..n)
        .filter(|&z| z != x)
        .map(|z| &(&(&base[x][z] + &base[x][z]) - &base[z][z]) - &base[x][x])
        .min()
        .unwrap_or_else(|| q("1"));
    let mut m: Vec<Vec<Rational>> = base.to_vec();
    for (z, row) in m.iter_mut().enumerate() {
        row.push(if z == x {
            &base[x][x] + &delta
        } else {
            base[x][z].clone()
        });
    }
    let mut last: Vec<Rational> = (0..n)
        .map(|z| {
            if z == x {
                &base[x][x] + &delta
            } else {
                base[x][z].clone()
            }
        })
        .collect();
    last.push(base[x][x].clone());
    m.push(last);
    m
}
