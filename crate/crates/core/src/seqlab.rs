//! Eventually periodic sequences and their (rough) limits.
//!
//! A sequence is a finite prefix followed by a cycle repeated forever, so
//! every real sequence derived from it (`n ↦ p(x_n, x)`, `n ↦ p(x_n, y_n)`)
//! is eventually periodic too. For such sequences `limsup` and `liminf` are
//! the maximum and minimum over one period, and the ε-quantified
//! definitions reduce to exact comparisons:
//!
//! * `x_n` r-converges to `x` iff `max_cycle |p(x_n,x) - p(x,x)| <= r`;
//! * from the right iff `max_cycle (p(x_n,x) - p(x,x))⁺ <= r`;
//! * from the left iff `max_cycle (p(x,x) - p(x_n,x))⁺ <= r`.
//!
//! Prefix terms occur finitely often and never affect limits.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pmspace::{PointSet, Space};
use crate::rational::Rational;

/// `x_n = prefix[n]` for `n < prefix.len()`, else
/// `cycle[(n - prefix.len()) % cycle.len()]`.
///
/// Equality is extensional: encodings denoting the same infinite sequence
/// compare equal.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "SequenceFile", into = "SequenceFile")]
pub struct Sequence {
    prefix: Vec<usize>,
    cycle: Vec<usize>,
}

/// Serialized form: `{"prefix": [indices], "cycle": [indices]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceFile {
    #[serde(default)]
    pub prefix: Vec<usize>,
    pub cycle: Vec<usize>,
}

impl TryFrom<SequenceFile> for Sequence {
    type Error = Error;

    fn try_from(f: SequenceFile) -> Result<Self> {
        Sequence::new(f.prefix, f.cycle)
    }
}

impl From<Sequence> for SequenceFile {
    fn from(s: Sequence) -> Self {
        SequenceFile {
            prefix: s.prefix,
            cycle: s.cycle,
        }
    }
}

fn primitive_period(cycle: &[usize]) -> usize {
    let len = cycle.len();
    (1..=len)
        .find(|&d| len.is_multiple_of(d) && (d..len).all(|i| cycle[i] == cycle[i % d]))
        .unwrap_or(len)
}

impl Sequence {
    pub fn new(prefix: Vec<usize>, cycle: Vec<usize>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::domain("sequence cycle must be nonempty"));
        }
        Ok(Sequence { prefix, cycle })
    }

    pub fn constant(x: usize) -> Self {
        Sequence {
            prefix: Vec::new(),
            cycle: vec![x],
        }
    }

    pub fn periodic(cycle: Vec<usize>) -> Result<Self> {
        Sequence::new(Vec::new(), cycle)
    }

    pub fn prefix(&self) -> &[usize] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[usize] {
        &self.cycle
    }

    pub fn term(&self, n: usize) -> usize {
        match self.prefix.get(n) {
            Some(&x) => x,
            None => self.cycle[(n - self.prefix.len()) % self.cycle.len()],
        }
    }

    /// Number of distinct positions needed to describe the sequence.
    pub fn span(&self) -> usize {
        self.prefix.len() + self.cycle.len()
    }

    /// Terms at every prefix and cycle position.
    pub fn terms(&self) -> impl Iterator<Item = usize> + '_ {
        self.prefix.iter().chain(&self.cycle).copied()
    }

    pub fn check_in(&self, space: &Space) -> Result<()> {
        self.terms().try_for_each(|i| space.check_point(i))
    }

    /// Shortest encoding: primitive cycle, with the prefix rolled into the
    /// cycle as far as possible.
    pub fn normalized(&self) -> Sequence {
        let mut cycle = self.cycle[..primitive_period(&self.cycle)].to_vec();
        let mut prefix = self.prefix.clone();
        while prefix.last().is_some() && prefix.last() == cycle.last() {
            prefix.pop();
            cycle.rotate_right(1);
        }
        Sequence { prefix, cycle }
    }

    /// `n ↦ x_{offset + n·step}`.
    pub fn arithmetic_subsequence(&self, offset: usize, step: usize) -> Result<Sequence> {
        if step == 0 {
            return Err(Error::domain("subsequence step must be at least 1"));
        }
        let start = self.prefix.len();
        // first n with offset + n·step inside the periodic part
        let first_periodic = if offset >= start {
            0
        } else {
            (start - offset).div_ceil(step)
        };
        let period = self.cycle.len() / self.cycle.len().gcd(&step);
        let at = |n: usize| self.term(offset + n * step);
        Ok(Sequence {
            prefix: (0..first_periodic).map(at).collect(),
            cycle: (first_periodic..first_periodic + period).map(at).collect(),
        })
    }
}

impl PartialEq for Sequence {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (self.normalized(), other.normalized());
        a.prefix == b.prefix && a.cycle == b.cycle
    }
}

impl Eq for Sequence {}

/// Which of the two-sided or one-sided rough convergence notions applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    #[serde(rename = "two")]
    TwoSided,
    Right,
    Left,
}

impl Side {
    pub const ALL: [Side; 3] = [Side::TwoSided, Side::Right, Side::Left];

    pub fn name(self) -> &'static str {
        match self {
            Side::TwoSided => "two",
            Side::Right => "right",
            Side::Left => "left",
        }
    }

    /// The deviation of `value` from `center` that this side constrains.
    pub fn deviation(self, value: &Rational, center: &Rational) -> Rational {
        match self {
            Side::TwoSided => (value - center).abs(),
            Side::Right => (value - center).positive_part(),
            Side::Left => (center - value).positive_part(),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "two" | "two-sided" | "both" => Ok(Side::TwoSided),
            "right" => Ok(Side::Right),
            "left" => Ok(Side::Left),
            _ => Err(Error::domain(format!(
                "unknown side {s:?}; expected two, right or left"
            ))),
        }
    }
}

/// An eventually periodic sequence of rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    prefix_vals: Vec<Rational>,
    cycle_vals: Vec<Rational>,
}

impl Profile {
    pub fn new(prefix_vals: Vec<Rational>, cycle_vals: Vec<Rational>) -> Result<Self> {
        if cycle_vals.is_empty() {
            return Err(Error::domain("profile cycle must be nonempty"));
        }
        Ok(Profile {
            prefix_vals,
            cycle_vals,
        })
    }

    pub fn prefix_vals(&self) -> &[Rational] {
        &self.prefix_vals
    }

    pub fn cycle_vals(&self) -> &[Rational] {
        &self.cycle_vals
    }

    pub fn limsup(&self) -> &Rational {
        self.cycle_vals.iter().max().expect("nonempty cycle")
    }

    pub fn liminf(&self) -> &Rational {
        self.cycle_vals.iter().min().expect("nonempty cycle")
    }

    /// Least `r` such that the profile r-converges to `center` on `side`,
    /// treating the reals as having zero self-distance.
    pub fn roughness_toward(&self, center: &Rational, side: Side) -> Rational {
        self.cycle_vals
            .iter()
            .map(|v| side.deviation(v, center))
            .max()
            .expect("nonempty cycle")
    }
}

/// `n ↦ p(x_n, x)`.
pub fn value_profile(space: &Space, seq: &Sequence, x: usize) -> Result<Profile> {
    space.check_point(x)?;
    seq.check_in(space)?;
    Ok(Profile {
        prefix_vals: seq.prefix.iter().map(|&t| space.p(t, x).clone()).collect(),
        cycle_vals: seq.cycle.iter().map(|&t| space.p(t, x).clone()).collect(),
    })
}

/// Least roughness degree with which `seq` converges to `x` on `side`.
pub fn minimal_roughness(space: &Space, seq: &Sequence, x: usize, side: Side) -> Result<Rational> {
    let profile = value_profile(space, seq, x)?;
    Ok(profile.roughness_toward(space.self_distance(x), side))
}

pub fn is_r_convergent(
    space: &Space,
    seq: &Sequence,
    x: usize,
    r: &Rational,
    side: Side,
) -> Result<bool> {
    if r.is_negative() {
        return Err(Error::domain(format!(
            "roughness degree must be nonnegative, got {r}"
        )));
    }
    Ok(&minimal_roughness(space, seq, x, side)? <= r)
}

/// `LIM^r` for [`Side::TwoSided`], `R-LIM^r` / `L-LIM^r` for the one-sided variants.
pub fn rough_limit_set(
    space: &Space,
    seq: &Sequence,
    r: &Rational,
    side: Side,
) -> Result<PointSet> {
    if r.is_negative() {
        return Err(Error::domain(format!(
            "roughness degree must be nonnegative, got {r}"
        )));
    }
    seq.check_in(space)?;
    let mut out = PointSet::new();
    for x in 0..space.len() {
        if &minimal_roughness(space, seq, x, side)? <= r {
            out.insert(x);
        }
    }
    Ok(out)
}

/// Classical convergence: `p(x_n, x) → p(x, x)`.
pub fn converges_to(space: &Space, seq: &Sequence, x: usize) -> Result<bool> {
    let profile = value_profile(space, seq, x)?;
    let target = space.self_distance(x);
    Ok(profile.cycle_vals.iter().all(|v| v == target))
}

/// Every point to which `seq` converges classically.
pub fn classical_limits(space: &Space, seq: &Sequence) -> Result<PointSet> {
    let mut out = PointSet::new();
    for x in 0..space.len() {
        if converges_to(space, seq, x)? {
            out.insert(x);
        }
    }
    Ok(out)
}

/// `lim_{n,m} p(x_n, x_m)` exists: p is constant over all pairs of cycle positions.
pub fn is_cauchy(space: &Space, seq: &Sequence) -> Result<bool> {
    seq.check_in(space)?;
    let first = space.p(seq.cycle[0], seq.cycle[0]);
    Ok(seq
        .cycle
        .iter()
        .all(|&u| seq.cycle.iter().all(|&v| space.p(u, v) == first)))
}

/// `sup_{n,m} p(x_n, x_m)` over every term of the sequence.
pub fn sequence_sup(space: &Space, seq: &Sequence) -> Result<Rational> {
    seq.check_in(space)?;
    let max = seq
        .terms()
        .flat_map(|u| seq.terms().map(move |v| (u, v)))
        .map(|(u, v)| space.p(u, v))
        .max()
        .expect("nonempty sequence");
    Ok(max.clone())
}

/// Bounded with bound `m`: `sup p(x_n, x_m) < m`.
pub fn is_bounded_sequence(space: &Space, seq: &Sequence, m: &Rational) -> Result<bool> {
    if !m.is_positive() {
        return Err(Error::domain(format!("bound M must be positive, got {m}")));
    }
    Ok(&sequence_sup(space, seq)? < m)
}

/// Points `c` with `p(x_n, c) = p(c, c)` at some cycle position.
///
/// With finitely many recurring values, "within every ε infinitely often"
/// is the same as exact equality at a recurring position.
pub fn cluster_points(space: &Space, seq: &Sequence) -> Result<PointSet> {
    seq.check_in(space)?;
    Ok((0..space.len())
        .filter(|&c| {
            seq.cycle
                .iter()
                .any(|&t| space.p(t, c) == space.self_distance(c))
        })
        .collect())
}

/// `n ↦ p(x_n, y_n)`, aligned on the longer prefix and the lcm of the cycles.
pub fn pair_profile(space: &Space, seq_x: &Sequence, seq_y: &Sequence) -> Result<Profile> {
    seq_x.check_in(space)?;
    seq_y.check_in(space)?;
    let start = seq_x.prefix.len().max(seq_y.prefix.len());
    let period = seq_x.cycle.len().lcm(&seq_y.cycle.len());
    let at = |n: usize| space.p(seq_x.term(n), seq_y.term(n)).clone();
    Ok(Profile {
        prefix_vals: (0..start).map(at).collect(),
        cycle_vals: (start..start + period).map(at).collect(),
    })
}

/// Least right roughness of a real eventually periodic sequence toward `target`.
pub fn real_right_roughness(profile: &Profile, target: &Rational) -> Rational {
    profile.roughness_toward(target, Side::Right)
}

/// Minimal roughness degrees of one candidate limit point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoughnessReport {
    pub candidate: usize,
    pub r_two: Rational,
    pub r_right: Rational,
    pub r_left: Rational,
}

/// JSON row form of a [`RoughnessReport`], keyed by label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoughnessRow {
    pub candidate: String,
    pub r_two: Rational,
    pub r_right: Rational,
    pub r_left: Rational,
}

impl RoughnessReport {
    pub fn to_row(&self, space: &Space) -> RoughnessRow {
        RoughnessRow {
            candidate: space.label(self.candidate).to_string(),
            r_two: self.r_two.clone(),
            r_right: self.r_right.clone(),
            r_left: self.r_left.clone(),
        }
    }
}

pub fn roughness_report(space: &Space, seq: &Sequence, x: usize) -> Result<RoughnessReport> {
    let profile = value_profile(space, seq, x)?;
    let center = space.self_distance(x);
    Ok(RoughnessReport {
        candidate: x,
        r_two: profile.roughness_toward(center, Side::TwoSided),
        r_right: profile.roughness_toward(center, Side::Right),
        r_left: profile.roughness_toward(center, Side::Left),
    })
}

/// Reports for `candidates`, or for every point when `None`.
pub fn roughness_reports(
    space: &Space,
    seq: &Sequence,
    candidates: Option<&[usize]>,
) -> Result<Vec<RoughnessReport>> {
    let all: Vec<usize> = (0..space.len()).collect();
    candidates
        .unwrap_or(&all)
        .iter()
        .map(|&x| roughness_report(space, seq, x))
        .collect()
}
