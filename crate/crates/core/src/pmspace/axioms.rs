//! Validation of the four partial metric axioms over a finite matrix.
//!
//! * p1: `0 <= p(x,x) <= p(x,y)`
//! * p2: `p(x,x) = p(x,y) = p(y,y)` implies `x = y`
//! * p3: `p(x,y) = p(y,x)`
//! * p4: `p(x,y) <= p(x,z) + p(z,y) - p(z,z)`
//!
//! Nonnegativity is checked as a structural precondition rather than as a
//! p1 violation.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Axiom {
    #[serde(rename = "p1")]
    P1,
    #[serde(rename = "p2")]
    P2,
    #[serde(rename = "p3")]
    P3,
    #[serde(rename = "p4")]
    P4,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::P1 => "p1",
            Axiom::P2 => "p2",
            Axiom::P3 => "p3",
            Axiom::P4 => "p4",
        })
    }
}

/// One failed axiom instance.
///
/// Meaning of `lhs`/`rhs` per axiom (witness indices in brackets):
///
/// | axiom | witness     | lhs          | rhs                          | violated       |
/// |-------|-------------|--------------|------------------------------|----------------|
/// | p1    | `[x, y]`    | `p(x,x)`     | `p(x,y)`                     | `lhs <= rhs`   |
/// | p2    | `[x, y]`    | `p(x,y)`     | `p(x,x)` (= `p(y,y)`)        | `lhs != rhs`   |
/// | p3    | `[x, y]`    | `p(x,y)`     | `p(y,x)`                     | `lhs == rhs`   |
/// | p4    | `[x, y, z]` | `p(x,y)`     | `p(x,z) + p(z,y) - p(z,z)`   | `lhs <= rhs`   |
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl AxiomViolation {
    /// Re-evaluates the axiom at the witness. True when `matrix` still
    /// produces exactly this violation.
    pub fn reproduces_on(&self, matrix: &[Vec<Rational>]) -> bool {
        let n = matrix.len();
        if self.witness.iter().any(|&i| i >= n) {
            return false;
        }
        let p = |i: usize, j: usize| &matrix[i][j];
        let (lhs, rhs, violated) = match (self.axiom, self.witness.as_slice()) {
            (Axiom::P1, &[x, y]) => (p(x, x).clone(), p(x, y).clone(), p(x, x) > p(x, y)),
            (Axiom::P2, &[x, y]) => (
                p(x, y).clone(),
                p(x, x).clone(),
                x != y && p(x, x) == p(x, y) && p(x, y) == p(y, y),
            ),
            (Axiom::P3, &[x, y]) => (p(x, y).clone(), p(y, x).clone(), p(x, y) != p(y, x)),
            (Axiom::P4, &[x, y, z]) => {
                let rhs = p(x, z) + p(z, y) - p(z, z);
                let violated = p(x, y) > &rhs;
                (p(x, y).clone(), rhs, violated)
            }
            _ => return false,
        };
        violated && lhs == self.lhs && rhs == self.rhs
    }
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = &self.witness;
        match self.axiom {
            Axiom::P1 => write!(
                f,
                "p1 at ({}, {}): p(x,x) = {} exceeds p(x,y) = {}",
                w[0], w[1], self.lhs, self.rhs
            ),
            Axiom::P2 => write!(
                f,
                "p2 at ({}, {}): distinct points with p(x,y) = p(x,x) = p(y,y) = {}",
                w[0], w[1], self.rhs
            ),
            Axiom::P3 => write!(
                f,
                "p3 at ({}, {}): p(x,y) = {} but p(y,x) = {}",
                w[0], w[1], self.lhs, self.rhs
            ),
            Axiom::P4 => write!(
                f,
                "p4 at (x={}, y={}, z={}): p(x,y) = {} exceeds p(x,z) + p(z,y) - p(z,z) = {}",
                w[0], w[1], w[2], self.lhs, self.rhs
            ),
        }
    }
}

/// Checks the matrix is nonempty, square and nonnegative.
pub(crate) fn check_structure(matrix: &[Vec<Rational>]) -> Result<()> {
    let n = matrix.len();
    if n == 0 {
        return Err(Error::Structure("matrix must have at least one row".into()));
    }
    for (i, row) in matrix.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Structure(format!(
                "matrix is not square: row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        if let Some((j, v)) = row.iter().enumerate().find(|(_, v)| v.is_negative()) {
            return Err(Error::Structure(format!(
                "negative entry {v} at ({i}, {j})"
            )));
        }
    }
    Ok(())
}

/// Every violation of p1..p4, grouped by axiom, each group in index order.
/// An empty result means the matrix is a partial metric.
pub fn validate_axioms(matrix: &[Vec<Rational>]) -> Result<Vec<AxiomViolation>> {
    check_structure(matrix)?;
    let n = matrix.len();
    let p = |i: usize, j: usize| &matrix[i][j];
    let mut out = Vec::new();

    for x in 0..n {
        for y in (0..n).filter(|&y| y != x) {
            if p(x, x) > p(x, y) {
                out.push(AxiomViolation {
                    axiom: Axiom::P1,
                    witness: vec![x, y],
                    lhs: p(x, x).clone(),
                    rhs: p(x, y).clone(),
                });
            }
        }
    }

    for x in 0..n {
        for y in x + 1..n {
            if p(x, x) == p(x, y) && p(x, y) == p(y, y) {
                out.push(AxiomViolation {
                    axiom: Axiom::P2,
                    witness: vec![x, y],
                    lhs: p(x, y).clone(),
                    rhs: p(x, x).clone(),
                });
            }
        }
    }

    for x in 0..n {
        for y in x + 1..n {
            if p(x, y) != p(y, x) {
                out.push(AxiomViolation {
                    axiom: Axiom::P3,
                    witness: vec![x, y],
                    lhs: p(x, y).clone(),
                    rhs: p(y, x).clone(),
                });
            }
        }
    }

    // z == x or z == y makes both sides equal.
    for x in 0..n {
        for y in 0..n {
            for z in (0..n).filter(|&z| z != x && z != y) {
                let rhs = p(x, z) + p(z, y) - p(z, z);
                if p(x, y) > &rhs {
                    out.push(AxiomViolation {
                        axiom: Axiom::P4,
                        witness: vec![x, y, z],
                        lhs: p(x, y).clone(),
                        rhs,
                    });
                }
            }
        }
    }

    Ok(out)
}
