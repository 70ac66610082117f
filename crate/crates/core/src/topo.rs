//! The topology τ(p) generated by open balls of a finite partial metric space.
//!
//! Only finitely many ball shapes exist around each center: `B(x, r)` only
//! changes when `r` crosses a value of `p(x, y) - p(x, x)`. One representative
//! radius per gap (the midpoint) plus one above the largest gap enumerates
//! them all. Open sets are kept as bitmasks over the carrier.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::pmspace::{PointSet, Space};
use crate::rational::Rational;

pub const DEFAULT_TOPOLOGY_CAP: usize = 12;
pub const TOPOLOGY_CAP_ENV: &str = "ROUGHLIM_TOPO_CAP";
/// Bitmask width.
const HARD_LIMIT: usize = 63;

/// The carrier cap from `ROUGHLIM_TOPO_CAP`, or [`DEFAULT_TOPOLOGY_CAP`].
pub fn topology_cap() -> Result<usize> {
    match std::env::var(TOPOLOGY_CAP_ENV) {
        Ok(text) => text.trim().parse().map_err(|_| {
            Error::domain(format!(
                "{TOPOLOGY_CAP_ENV}={text:?} is not a nonnegative integer"
            ))
        }),
        Err(_) => Ok(DEFAULT_TOPOLOGY_CAP),
    }
}

fn to_mask(set: &PointSet) -> u64 {
    set.iter().fold(0, |m, &i| m | 1 << i)
}

fn to_set(mask: u64) -> PointSet {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

fn representative_radii(space: &Space, center: usize) -> Vec<Rational> {
    let gaps: BTreeSet<Rational> = (0..space.len())
        .map(|y| space.p(center, y) - space.self_distance(center))
        .collect();
    let gaps: Vec<Rational> = gaps.into_iter().collect();
    let half = Rational::new(1, 2);
    let mut radii: Vec<Rational> = gaps
        .windows(2)
        .map(|w| (&w[0] + &w[1]) * half.clone())
        .collect();
    radii.push(gaps.last().expect("center is in its own row") + &Rational::one());
    radii
}

/// The distinct open balls, ordered by bitmask.
pub fn basis_balls(space: &Space) -> Vec<PointSet> {
    basis_masks(space).into_iter().map(to_set).collect()
}

fn basis_masks(space: &Space) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    for center in 0..space.len() {
        for r in representative_radii(space, center) {
            let ball = space.open_ball(center, &r).expect("radius is positive");
            out.insert(to_mask(&ball));
        }
    }
    out
}

/// A finite topology as the explicit family of its open sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Topology {
    points: usize,
    opens: BTreeSet<u64>,
}

/// Generates τ(p), refusing carriers above the cap from [`topology_cap`].
pub fn generate_topology(space: &Space) -> Result<Topology> {
    generate_topology_capped(space, topology_cap()?)
}

/// All unions of basis balls, plus the empty set.
pub fn generate_topology_capped(space: &Space, cap: usize) -> Result<Topology> {
    if space.len() > cap.min(HARD_LIMIT) {
        return Err(Error::TopologyCap {
            points: space.len(),
            cap: cap.min(HARD_LIMIT),
        });
    }
    let mut opens = BTreeSet::from([0u64]);
    for ball in basis_masks(space) {
        let grown: Vec<u64> = opens.iter().map(|o| o | ball).collect();
        opens.extend(grown);
    }
    Ok(Topology {
        points: space.len(),
        opens,
    })
}

impl Topology {
    pub fn points(&self) -> usize {
        self.points
    }

    fn full(&self) -> u64 {
        (1u64 << self.points) - 1
    }

    pub fn len(&self) -> usize {
        self.opens.len()
    }

    /// Always false; ∅ is open.
    pub fn is_empty(&self) -> bool {
        self.opens.is_empty()
    }

    pub fn opens(&self) -> Vec<PointSet> {
        self.opens.iter().map(|&m| to_set(m)).collect()
    }

    pub fn closed_sets(&self) -> Vec<PointSet> {
        self.opens
            .iter()
            .map(|&m| to_set(self.full() & !m))
            .collect()
    }

    fn mask_of(&self, subset: &PointSet) -> Result<u64> {
        match subset.iter().find(|&&i| i >= self.points) {
            Some(i) => Err(Error::domain(format!(
                "point index {i} out of range for a topology on {} points",
                self.points
            ))),
            None => Ok(to_mask(subset)),
        }
    }

    pub fn is_open(&self, subset: &PointSet) -> Result<bool> {
        Ok(self.opens.contains(&self.mask_of(subset)?))
    }

    pub fn is_closed(&self, subset: &PointSet) -> Result<bool> {
        let mask = self.mask_of(subset)?;
        Ok(self.opens.contains(&(self.full() & !mask)))
    }

    /// Smallest closed superset.
    pub fn closure(&self, subset: &PointSet) -> Result<PointSet> {
        let mask = self.mask_of(subset)?;
        let closure = self
            .opens
            .iter()
            .map(|&o| self.full() & !o)
            .filter(|&c| c & mask == mask)
            .fold(self.full(), |acc, c| acc & c);
        Ok(to_set(closure))
    }

    /// For distinct points, some open set contains exactly one of them.
    pub fn is_t0(&self) -> bool {
        self.distinct_pairs()
            .all(|(x, y)| self.opens.iter().any(|&o| (o >> x & 1) != (o >> y & 1)))
    }

    /// For distinct points, each has an open set missing the other.
    pub fn is_t1(&self) -> bool {
        let separates = |a: usize, b: usize| {
            self.opens
                .iter()
                .any(|&o| o >> a & 1 == 1 && o >> b & 1 == 0)
        };
        self.distinct_pairs()
            .all(|(x, y)| separates(x, y) && separates(y, x))
    }

    fn distinct_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.points).flat_map(move |x| (x + 1..self.points).map(move |y| (x, y)))
    }

    /// Opens as label arrays: each array sorted, arrays ordered by size then
    /// lexicographically.
    pub fn canonical_opens(&self, space: &Space) -> Vec<Vec<String>> {
        let mut out: Vec<Vec<String>> = self
            .opens
            .iter()
            .map(|&m| {
                let mut labels: Vec<String> = to_set(m)
                    .into_iter()
                    .map(|i| space.label(i).to_string())
                    .collect();
                labels.sort();
                labels
            })
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    pub fn dump_json(&self, space: &Space) -> String {
        serde_json::to_string_pretty(&self.canonical_opens(space))
            .expect("label arrays always serialize")
    }
}
