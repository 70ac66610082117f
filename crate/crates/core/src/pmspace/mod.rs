//! Finite partial metric spaces with exact rational distances.

mod axioms;
mod generate;

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

pub use axioms::{validate_axioms, Axiom, AxiomViolation};
pub use generate::{
    gen_example31, gen_max, gen_random, gen_random_with, gen_weighted, gen_weighted_labeled, Family,
};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A subset of the carrier, by point index.
pub type PointSet = BTreeSet<usize>;

/// A validated finite partial metric space.
///
/// Construction goes through [`Space::new`], so every value of this type
/// satisfies p1..p4.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Space {
    labels: Vec<String>,
    matrix: Vec<Vec<Rational>>,
}

/// Whether every point has the same self-distance `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfDistanceSummary {
    pub constant: Option<Rational>,
}

/// On-disk form of a space: `{"labels": [...], "matrix": [["p/q", ...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceFile {
    pub labels: Vec<String>,
    pub matrix: Vec<Vec<Rational>>,
}

impl SpaceFile {
    /// Decodes JSON without checking the axioms.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }
}

impl Space {
    /// Builds a space, rejecting mismatched labels or any axiom violation.
    pub fn new(labels: Vec<String>, matrix: Vec<Vec<Rational>>) -> Result<Self> {
        if labels.len() != matrix.len() {
            return Err(Error::Structure(format!(
                "{} labels for a matrix with {} rows",
                labels.len(),
                matrix.len()
            )));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(Error::Structure(format!("duplicate label {dup:?}")));
        }
        let violations = validate_axioms(&matrix)?;
        if !violations.is_empty() {
            return Err(Error::Axioms(violations));
        }
        Ok(Space { labels, matrix })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always false; a space has at least one point.
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    /// `p(i, j)`. Panics on out-of-range indices; use [`Space::check_point`]
    /// first for untrusted input.
    #[inline]
    pub fn p(&self, i: usize, j: usize) -> &Rational {
        &self.matrix[i][j]
    }

    #[inline]
    pub fn self_distance(&self, i: usize) -> &Rational {
        &self.matrix[i][i]
    }

    pub fn check_point(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "point index {i} out of range for a space of {} points",
                self.len()
            )))
        }
    }

    pub fn full_set(&self) -> PointSet {
        (0..self.len()).collect()
    }

    pub fn labels_of<'a>(&'a self, set: &PointSet) -> Vec<&'a str> {
        set.iter().map(|&i| self.label(i)).collect()
    }

    /// `{y : p(center, y) < p(center, center) + radius}`; radius must be positive.
    pub fn open_ball(&self, center: usize, radius: &Rational) -> Result<PointSet> {
        self.check_point(center)?;
        if !radius.is_positive() {
            return Err(Error::domain(format!(
                "open ball radius must be positive, got {radius}"
            )));
        }
        let bound = self.self_distance(center) + radius;
        Ok((0..self.len())
            .filter(|&y| self.p(center, y) < &bound)
            .collect())
    }

    /// `{y : p(center, y) <= p(center, center) + radius}`; radius must be nonnegative.
    pub fn closed_ball(&self, center: usize, radius: &Rational) -> Result<PointSet> {
        self.check_point(center)?;
        if radius.is_negative() {
            return Err(Error::domain(format!(
                "closed ball radius must be nonnegative, got {radius}"
            )));
        }
        let bound = self.self_distance(center) + radius;
        Ok((0..self.len())
            .filter(|&y| self.p(center, y) <= &bound)
            .collect())
    }

    /// Largest `p(x, y)` over ordered pairs of the subset (diagonal included).
    pub fn diameter(&self, subset: &PointSet) -> Result<Rational> {
        if subset.is_empty() {
            return Err(Error::domain("diameter of the empty set is undefined"));
        }
        for &i in subset {
            self.check_point(i)?;
        }
        let max = subset
            .iter()
            .flat_map(|&x| subset.iter().map(move |&y| (x, y)))
            .map(|(x, y)| self.p(x, y))
            .max()
            .expect("nonempty subset");
        Ok(max.clone())
    }

    /// Bounded with bound `m`: the supremum of p over the subset is strictly below `m`.
    pub fn is_bounded_set(&self, subset: &PointSet, m: &Rational) -> Result<bool> {
        if !m.is_positive() {
            return Err(Error::domain(format!("bound M must be positive, got {m}")));
        }
        Ok(&self.diameter(subset)? < m)
    }

    pub fn self_distance_summary(&self) -> SelfDistanceSummary {
        let first = self.self_distance(0);
        let uniform = (1..self.len()).all(|i| self.self_distance(i) == first);
        SelfDistanceSummary {
            constant: uniform.then(|| first.clone()),
        }
    }

    pub fn to_file(&self) -> SpaceFile {
        SpaceFile {
            labels: self.labels.clone(),
            matrix: self.matrix.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("space serialization cannot fail")
    }

    /// Parses and validates. Schema problems surface as [`Error::Schema`] or
    /// [`Error::Structure`]; axiom problems as [`Error::Axioms`].
    pub fn from_json(text: &str) -> Result<Self> {
        let file = SpaceFile::from_json(text)?;
        Space::try_from(file)
    }

    pub fn to_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_file()).expect("space serialization cannot fail")
    }
}

impl TryFrom<SpaceFile> for Space {
    type Error = Error;

    fn try_from(file: SpaceFile) -> Result<Self> {
        Space::new(file.labels, file.matrix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn ex() -> Space {
        gen_example31(&[2, 3]).unwrap()
    }

    fn set(items: &[usize]) -> PointSet {
        items.iter().copied().collect()
    }

    #[test]
    fn make_space_examples() {
        let single = Space::new(vec!["a".into()], vec![vec![q("0")]]).unwrap();
        assert_eq!(single.len(), 1);
        let heavy = Space::new(vec!["a".into()], vec![vec![q("5")]]).unwrap();
        assert_eq!(heavy.self_distance(0), &q("5"));
        let labels = vec!["0".to_string(), "2".into(), "3".into()];
        let matrix = vec![
            vec![q("1"), q("3/2"), q("4/3")],
            vec![q("3/2"), q("1"), q("11/6")],
            vec![q("4/3"), q("11/6"), q("1")],
        ];
        assert_eq!(Space::new(labels, matrix).unwrap(), ex());
    }

    #[test]
    fn make_space_rejects_bad_input() {
        let dup = Space::new(
            vec!["a".into(), "a".into()],
            vec![vec![q("0"), q("1")], vec![q("1"), q("0")]],
        );
        assert!(matches!(dup, Err(Error::Structure(_))));
        let bad = Space::new(
            vec!["a".into(), "b".into()],
            vec![vec![q("0"), q("0")], vec![q("0"), q("0")]],
        );
        match bad {
            Err(Error::Axioms(v)) => assert_eq!(v[0].axiom, Axiom::P2),
            other => panic!("expected axiom error, got {other:?}"),
        }
        assert!(matches!(
            Space::new(vec!["a".into()], vec![vec![q("0")], vec![q("0")]]),
            Err(Error::Structure(_))
        ));
    }

    #[test]
    fn balls() {
        let s = ex();
        // indices: 0 -> "0", 1 -> "2", 2 -> "3"
        assert_eq!(s.open_ball(0, &q("1/2")).unwrap(), set(&[0, 2]));
        assert_eq!(s.closed_ball(0, &q("1/2")).unwrap(), set(&[0, 1, 2]));
        assert_eq!(s.open_ball(0, &q("100")).unwrap(), s.full_set());
        assert_eq!(s.closed_ball(1, &q("0")).unwrap(), set(&[1]));
        assert!(matches!(s.open_ball(0, &q("0")), Err(Error::Domain(_))));
        assert!(matches!(s.closed_ball(0, &q("-1")), Err(Error::Domain(_))));
        assert!(matches!(s.open_ball(7, &q("1")), Err(Error::Domain(_))));

        let single = Space::new(vec!["a".into()], vec![vec![q("3")]]).unwrap();
        assert_eq!(single.open_ball(0, &q("1/9")).unwrap(), set(&[0]));
        assert_eq!(single.closed_ball(0, &q("0")).unwrap(), set(&[0]));
    }

    #[test]
    fn diameter_and_boundedness() {
        let s = ex();
        assert_eq!(s.diameter(&s.full_set()).unwrap(), q("11/6"));
        assert_eq!(s.diameter(&set(&[2])).unwrap(), q("1"));
        assert_eq!(s.diameter(&set(&[0, 1])).unwrap(), q("3/2"));
        assert!(matches!(
            s.diameter(&PointSet::new()),
            Err(Error::Domain(_))
        ));

        assert!(s.is_bounded_set(&s.full_set(), &q("2")).unwrap());
        assert!(!s.is_bounded_set(&s.full_set(), &q("11/6")).unwrap());
        let zero = Space::new(vec!["a".into()], vec![vec![q("0")]]).unwrap();
        assert!(zero.is_bounded_set(&set(&[0]), &q("1")).unwrap());
    }

    #[test]
    fn self_distance_summaries() {
        assert_eq!(ex().self_distance_summary().constant, Some(q("1")));
        let mixed = gen_max(&[q("0"), q("1")]).unwrap();
        assert_eq!(mixed.self_distance_summary().constant, None);
        let metric = Space::new(
            vec!["a".into(), "b".into()],
            vec![vec![q("0"), q("1")], vec![q("1"), q("0")]],
        )
        .unwrap();
        assert_eq!(metric.self_distance_summary().constant, Some(q("0")));
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let s = ex();
        let text = s.to_json();
        let back = Space::from_json(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.to_json(), text);
        assert!(text.contains("\"11/6\""));
    }

    #[test]
    fn json_errors_are_classified() {
        let ragged = r#"{"labels":["a","b","c"],"matrix":[["0","1"],["1","0"],["1","1"]]}"#;
        assert!(matches!(Space::from_json(ragged), Err(Error::Structure(_))));
        let p1 = r#"{"labels":["a","b"],"matrix":[["2","1"],["1","0"]]}"#;
        assert!(matches!(Space::from_json(p1), Err(Error::Axioms(_))));
        let decimal = r#"{"labels":["a"],"matrix":[["0.5"]]}"#;
        assert!(matches!(Space::from_json(decimal), Err(Error::Schema(_))));
        assert!(matches!(Space::from_json("{"), Err(Error::Schema(_))));
    }

    fn arb_space() -> impl Strategy<Value = Space> {
        (any::<u64>(), 1usize..7, 0usize..5)
            .prop_map(|(seed, n, f)| gen_random(seed, n, Family::ALL[f]).unwrap())
    }

    proptest! {
        #[test]
        fn ball_nesting(space in arb_space(), c in 0usize..7, a in 1i64..20, b in 0i64..20) {
            let c = c % space.len();
            let r = Rational::new(a, 4);
            let r2 = &r + &Rational::new(b, 4);
            let open = space.open_ball(c, &r).unwrap();
            let closed = space.closed_ball(c, &r).unwrap();
            let wider = space.closed_ball(c, &r2).unwrap();
            prop_assert!(open.contains(&c));
            prop_assert!(open.is_subset(&closed));
            prop_assert!(closed.is_subset(&wider));
        }

        #[test]
        fn diameter_monotone(space in arb_space(), mask in 1u32..128, extra in 0u32..128) {
            let n = space.len();
            let small: PointSet = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            prop_assume!(!small.is_empty());
            let big: PointSet = (0..n).filter(|i| (mask | extra) >> i & 1 == 1).collect();
            prop_assert!(space.diameter(&small).unwrap() <= space.diameter(&big).unwrap());
        }
    }
}
