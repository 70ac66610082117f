//! Constructors for valid partial metric spaces.
//!
//! Random spaces come from a metric `d` and point weights `w` via
//! `p(x,y) = d(x,y) + (w(x) + w(y)) / 2`, which satisfies p1..p4 whenever
//! `d` is a metric and `|w(x) - w(y)| <= 2 d(x,y)`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{validate_axioms, Space};
use crate::error::{Error, LipschitzViolation, Result};
use crate::rational::Rational;

/// Families of randomly generated spaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Pure metric (all self-distances zero).
    Metric,
    /// Metric plus one constant weight `a > 0`; every self-distance equals `a`.
    Constant,
    /// Metric plus 2-Lipschitz weights; self-distances vary.
    Lipschitz,
    /// Finite truncation `{0} ∪ ks` of the `1 + 1/n + 1/m` space.
    Example31,
    /// `p(x, y) = max(x, y)` on distinct nonnegative rationals.
    Max,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Metric,
        Family::Constant,
        Family::Lipschitz,
        Family::Example31,
        Family::Max,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Metric => "metric",
            Family::Constant => "constant",
            Family::Lipschitz => "lipschitz",
            Family::Example31 => "example31",
            Family::Max => "max",
        }
    }

    /// True when every generated space has zero self-distances.
    pub fn is_zero_self_distance(self) -> bool {
        matches!(self, Family::Metric)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                Error::domain(format!(
                    "unknown family {s:?}; expected one of metric, constant, lipschitz, example31, max"
                ))
            })
    }
}

fn index_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn check_metric(metric: &[Vec<Rational>]) -> Result<()> {
    super::axioms::check_structure(metric)?;
    let n = metric.len();
    for x in 0..n {
        if !metric[x][x].is_zero() {
            return Err(Error::domain(format!("metric has nonzero diagonal at {x}")));
        }
        for y in 0..n {
            if metric[x][y] != metric[y][x] {
                return Err(Error::domain(format!(
                    "metric is not symmetric at ({x}, {y})"
                )));
            }
            for z in 0..n {
                if metric[x][y] > &metric[x][z] + &metric[z][y] {
                    return Err(Error::domain(format!(
                        "metric breaks the triangle inequality at ({x}, {y}) via {z}"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// [`gen_weighted_labeled`] with labels `"0"`, `"1"`, ...
pub fn gen_weighted(metric: &[Vec<Rational>], weights: &[Rational]) -> Result<Space> {
    gen_weighted_labeled(index_labels(metric.len()), metric, weights)
}

/// `p(x,y) = d(x,y) + (w(x) + w(y)) / 2`, so `p(x,x) = w(x)`.
pub fn gen_weighted_labeled(
    labels: Vec<String>,
    metric: &[Vec<Rational>],
    weights: &[Rational],
) -> Result<Space> {
    check_metric(metric)?;
    let n = metric.len();
    if weights.len() != n {
        return Err(Error::Structure(format!(
            "{} weights for a metric on {n} points",
            weights.len()
        )));
    }
    if let Some(w) = weights.iter().find(|w| w.is_negative()) {
        return Err(Error::domain(format!("negative weight {w}")));
    }
    let two = Rational::from(2);
    for x in 0..n {
        for y in x + 1..n {
            if (&weights[x] - &weights[y]).abs() > &two * &metric[x][y] {
                return Err(Error::Lipschitz(Box::new(LipschitzViolation {
                    x,
                    y,
                    wx: weights[x].clone(),
                    wy: weights[y].clone(),
                    d: metric[x][y].clone(),
                })));
            }
        }
    }
    let matrix = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| &metric[x][y] + &((&weights[x] + &weights[y]) / two.clone()))
                .collect()
        })
        .collect();
    Space::new(labels, matrix)
}

/// The `{0} ∪ ks` truncation of the space on `{0} ∪ N` with
/// `p(n,m) = 1 + 1/n + 1/m` (n ≠ m), `p(n,n) = 1`, `p(n,0) = 1 + 1/n`.
/// Point `0` comes first, then `ks` in the given order.
pub fn gen_example31(ks: &[u64]) -> Result<Space> {
    if ks.is_empty() {
        return Err(Error::domain("ks must be nonempty"));
    }
    let mut seen = HashSet::new();
    for &k in ks {
        if k == 0 {
            return Err(Error::domain(
                "ks must not contain 0 (0 is always in the carrier)",
            ));
        }
        if !seen.insert(k) {
            return Err(Error::domain(format!("duplicate k = {k}")));
        }
        if k > i64::MAX as u64 {
            return Err(Error::domain(format!("k = {k} is too large")));
        }
    }
    let points: Vec<u64> = std::iter::once(0).chain(ks.iter().copied()).collect();
    let recip = |n: u64| Rational::new(1, n as i64);
    let matrix = points
        .iter()
        .map(|&n| {
            points
                .iter()
                .map(|&m| match (n, m) {
                    _ if n == m => Rational::one(),
                    (0, m) => Rational::one() + recip(m),
                    (n, 0) => Rational::one() + recip(n),
                    (n, m) => Rational::one() + recip(n) + recip(m),
                })
                .collect()
        })
        .collect();
    Space::new(points.iter().map(|n| n.to_string()).collect(), matrix)
}

/// `p(x, y) = max(x, y)` over distinct nonnegative values, labeled by value.
pub fn gen_max(values: &[Rational]) -> Result<Space> {
    if values.is_empty() {
        return Err(Error::domain("values must be nonempty"));
    }
    let mut seen = HashSet::new();
    for v in values {
        if v.is_negative() {
            return Err(Error::domain(format!("negative value {v}")));
        }
        if !seen.insert(v) {
            return Err(Error::domain(format!("duplicate value {v}")));
        }
    }
    let matrix = values
        .iter()
        .map(|x| values.iter().map(|y| x.max(y).clone()).collect())
        .collect();
    Space::new(values.iter().map(|v| v.to_string()).collect(), matrix)
}

/// Deterministic random space of `n` points from `family`.
pub fn gen_random(seed: u64, n: usize, family: Family) -> Result<Space> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    gen_random_with(&mut rng, n, family)
}

#[allow(clippy::needless_range_loop)]
fn random_metric<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Vec<Rational>> {
    let mut d = vec![vec![Rational::zero(); n]; n];
    for x in 0..n {
        for y in x + 1..n {
            let w = Rational::new(rng.gen_range(1..=8), 4);
            d[x][y] = w.clone();
            d[y][x] = w;
        }
    }
    // shortest-path closure turns positive edge weights into a metric
    for z in 0..n {
        for x in 0..n {
            for y in 0..n {
                let via = &d[x][z] + &d[z][y];
                if via < d[x][y] {
                    d[x][y] = via;
                }
            }
        }
    }
    d
}

/// Like [`gen_random`] but drawing from a caller-supplied generator.
pub fn gen_random_with<R: Rng + ?Sized>(rng: &mut R, n: usize, family: Family) -> Result<Space> {
    if n == 0 {
        return Err(Error::domain("a space needs at least one point"));
    }
    let space = match family {
        Family::Metric => {
            let d = random_metric(rng, n);
            gen_weighted(&d, &vec![Rational::zero(); n])?
        }
        Family::Constant => {
            let d = random_metric(rng, n);
            let a = Rational::new(rng.gen_range(1..=4), 2);
            gen_weighted(&d, &vec![a; n])?
        }
        Family::Lipschitz => {
            let d = random_metric(rng, n);
            // min of functions b + t·d(anchor, ·) with t <= 2 is 2-Lipschitz
            let anchors: Vec<(usize, Rational, Rational)> = (0..2)
                .map(|_| {
                    (
                        rng.gen_range(0..n),
                        Rational::new(rng.gen_range(0..=4), 4),
                        Rational::new(rng.gen_range(0..=4), 2),
                    )
                })
                .collect();
            let weights: Vec<Rational> = (0..n)
                .map(|x| {
                    anchors
                        .iter()
                        .map(|(a, b, t)| b + &(t * &d[*a][x]))
                        .min()
                        .expect("two anchors")
                })
                .collect();
            gen_weighted(&d, &weights)?
        }
        Family::Example31 => {
            if n == 1 {
                Space::new(vec!["0".into()], vec![vec![Rational::one()]])?
            } else {
                let mut pool: Vec<u64> = (1..=12.max(n as u64)).collect();
                pool.shuffle(rng);
                gen_example31(&pool[..n - 1])?
            }
        }
        Family::Max => {
            let top = 12.max(2 * n as i64);
            let mut pool: Vec<i64> = (0..=top).collect();
            pool.shuffle(rng);
            let values: Vec<Rational> = pool[..n].iter().map(|&k| Rational::new(k, 2)).collect();
            gen_max(&values)?
        }
    };
    let violations = validate_axioms(space.matrix())?;
    if !violations.is_empty() {
        return Err(Error::Internal(format!(
            "{family} generator produced an invalid space: {}",
            violations[0]
        )));
    }
    Ok(space)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn grid(rows: &[&[&str]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|s| q(s)).collect())
            .collect()
    }

    #[test]
    fn weighted_two_points() {
        let d = grid(&[&["0", "1"], &["1", "0"]]);
        let s = gen_weighted(&d, &[q("1"), q("1")]).unwrap();
        assert_eq!(s.matrix(), grid(&[&["1", "2"], &["2", "1"]]).as_slice());
    }

    #[test]
    fn zero_weights_give_the_metric() {
        let d = grid(&[&["0", "1", "2"], &["1", "0", "3/2"], &["2", "3/2", "0"]]);
        let s = gen_weighted(&d, &vec![Rational::zero(); 3]).unwrap();
        assert_eq!(s.matrix(), d.as_slice());
    }

    #[test]
    fn weighted_reproduces_example_entries() {
        // d(n,m) = 1/n + 1/m on {2,3}, w = 1
        let d = grid(&[&["0", "5/6"], &["5/6", "0"]]);
        let s = gen_weighted(&d, &[q("1"), q("1")]).unwrap();
        let ex = gen_example31(&[2, 3]).unwrap();
        assert_eq!(s.p(0, 1), ex.p(1, 2));
        assert_eq!(s.p(0, 0), ex.p(1, 1));
    }

    #[test]
    fn weighted_rejects_steep_weights() {
        let d = grid(&[&["0", "1"], &["1", "0"]]);
        let err = gen_weighted(&d, &[q("0"), q("3")]).unwrap_err();
        assert!(matches!(err, Error::Lipschitz(v) if v.x == 0 && v.y == 1));
        let not_metric = grid(&[&["0", "1", "5"], &["1", "0", "1"], &["5", "1", "0"]]);
        assert!(matches!(
            gen_weighted(&not_metric, &vec![Rational::zero(); 3]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn example31_matrices() {
        let s = gen_example31(&[2, 3]).unwrap();
        assert_eq!(s.labels(), &["0", "2", "3"]);
        assert_eq!(
            s.matrix(),
            grid(&[
                &["1", "3/2", "4/3"],
                &["3/2", "1", "11/6"],
                &["4/3", "11/6", "1"]
            ])
            .as_slice()
        );
        let s1 = gen_example31(&[1]).unwrap();
        assert_eq!(s1.matrix(), grid(&[&["1", "2"], &["2", "1"]]).as_slice());
        assert!(matches!(gen_example31(&[2, 2]), Err(Error::Domain(_))));
        assert!(matches!(gen_example31(&[0, 2]), Err(Error::Domain(_))));
        assert!(matches!(gen_example31(&[]), Err(Error::Domain(_))));
    }

    #[test]
    fn example31_agrees_with_formula() {
        let ks = [1u64, 2, 3, 5, 7, 11];
        let s = gen_example31(&ks).unwrap();
        let carrier: Vec<u64> = std::iter::once(0).chain(ks).collect();
        for (i, &n) in carrier.iter().enumerate() {
            assert_eq!(s.self_distance(i), &Rational::one());
            for (j, &m) in carrier.iter().enumerate() {
                let expected = if n == m {
                    Rational::one()
                } else {
                    let part = |k: u64| {
                        if k == 0 {
                            Rational::zero()
                        } else {
                            Rational::new(1, k as i64)
                        }
                    };
                    Rational::one() + part(n) + part(m)
                };
                assert_eq!(s.p(i, j), &expected, "p({n},{m})");
            }
        }
    }

    #[test]
    fn random_families() {
        for family in Family::ALL {
            let single = gen_random(9, 1, family).unwrap();
            assert_eq!(single.len(), 1);
            for seed in 0..40 {
                let s = gen_random(seed, 6, family).unwrap();
                assert_eq!(s.len(), 6);
                assert!(validate_axioms(s.matrix()).unwrap().is_empty());
            }
        }
        let c = gen_random(3, 5, Family::Constant).unwrap();
        let a = c
            .self_distance_summary()
            .constant
            .expect("constant diagonal");
        assert!(a.is_positive());
        let m = gen_random(3, 5, Family::Metric).unwrap();
        assert_eq!(m.self_distance_summary().constant, Some(Rational::zero()));
        assert!(matches!(
            gen_random(0, 0, Family::Metric),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn random_is_deterministic() {
        for family in Family::ALL {
            assert_eq!(
                gen_random(77, 5, family).unwrap(),
                gen_random(77, 5, family).unwrap()
            );
        }
    }

    #[test]
    fn family_names_round_trip() {
        for family in Family::ALL {
            assert_eq!(family.name().parse::<Family>().unwrap(), family);
        }
        assert!("nope".parse::<Family>().is_err());
    }
}
