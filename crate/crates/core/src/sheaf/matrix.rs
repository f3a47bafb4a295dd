use std::fmt;

use num_rational::BigRational;

use super::SplitBundle;
use crate::linalg::RationalMatrix;
use crate::poly::Polynomial;
use crate::{Error, Result, Weights};

/// A map of split bundles `source → target` given by homogeneous polynomial entries.
///
/// Rows index target summands and columns index source summands, so the entry at
/// `(i, j)` has degree `target[i] - source[j]`.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedMatrix {
    weights: Weights,
    source: SplitBundle,
    target: SplitBundle,
    entries: Vec<Vec<Polynomial>>,
}

impl GradedMatrix {
    pub fn new(
        weights: Weights,
        source: SplitBundle,
        target: SplitBundle,
        entries: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        if entries.len() != target.rank() {
            return Err(Error::Shape(format!(
                "{} rows for a target of rank {}",
                entries.len(),
                target.rank()
            )));
        }
        for (row, line) in entries.iter().enumerate() {
            if line.len() != source.rank() {
                return Err(Error::Shape(format!(
                    "row {row} has {} entries for a source of rank {}",
                    line.len(),
                    source.rank()
                )));
            }
            for (col, p) in line.iter().enumerate() {
                if p.nvars() != weights.num_vars() {
                    return Err(Error::Shape(format!(
                        "entry ({row}, {col}) uses {} variables, expected {}",
                        p.nvars(),
                        weights.num_vars()
                    )));
                }
                let expected = target.twists()[row] - source.twists()[col];
                match p.weighted_degree(&weights) {
                    None => {}
                    Some(Err(())) => return Err(Error::NotHomogeneous { row, col }),
                    Some(Ok(found)) if found != expected => {
                        return Err(Error::DegreeMismatch {
                            row,
                            col,
                            expected,
                            found,
                        })
                    }
                    Some(Ok(_)) => {}
                }
            }
        }
        Ok(GradedMatrix {
            weights,
            source,
            target,
            entries,
        })
    }

    /// Diagonal map `x_j · id : F(-w_j) → F` on a split bundle `F`.
    pub fn coordinate_multiplication(weights: &Weights, bundle: &SplitBundle, j: usize) -> Self {
        let nvars = weights.num_vars();
        let r = bundle.rank();
        let entries = (0..r)
            .map(|row| {
                (0..r)
                    .map(|col| {
                        if row == col {
                            Polynomial::var(nvars, j, 1)
                        } else {
                            Polynomial::zero(nvars)
                        }
                    })
                    .collect()
            })
            .collect();
        GradedMatrix {
            weights: weights.clone(),
            source: bundle.twisted(-weights.weight(j)),
            target: bundle.clone(),
            entries,
        }
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    pub fn source(&self) -> &SplitBundle {
        &self.source
    }

    pub fn target(&self) -> &SplitBundle {
        &self.target
    }

    pub fn entries(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> &Polynomial {
        &self.entries[row][col]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Polynomial::is_zero)
    }

    /// No entry is a nonzero constant.
    pub fn is_minimal(&self) -> bool {
        !self.entries.iter().flatten().any(Polynomial::is_nonzero_scalar)
    }

    /// `self ∘ first`, where `first` maps into the source of `self`.
    pub fn compose(&self, first: &GradedMatrix) -> Result<GradedMatrix> {
        if first.target != self.source {
            return Err(Error::Shape(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source, self.target, first.source, first.target
            )));
        }
        let nvars = self.weights.num_vars();
        let entries = (0..self.target.rank())
            .map(|i| {
                (0..first.source.rank())
                    .map(|j| {
                        (0..self.source.rank()).fold(Polynomial::zero(nvars), |acc, l| {
                            acc.add(&self.entries[i][l].mul(&first.entries[l][j]))
                        })
                    })
                    .collect()
            })
            .collect();
        Ok(GradedMatrix {
            weights: self.weights.clone(),
            source: first.source.clone(),
            target: self.target.clone(),
            entries,
        })
    }

    /// The dual map `target^∨ → source^∨`.
    pub fn transpose(&self) -> GradedMatrix {
        let entries = (0..self.source.rank())
            .map(|j| (0..self.target.rank()).map(|i| self.entries[i][j].clone()).collect())
            .collect();
        GradedMatrix {
            weights: self.weights.clone(),
            source: self.target.dual(),
            target: self.source.dual(),
            entries,
        }
    }

    /// The same entries between `source(t) → target(t)`.
    pub fn twisted(&self, t: i64) -> GradedMatrix {
        GradedMatrix {
            weights: self.weights.clone(),
            source: self.source.twisted(t),
            target: self.target.twisted(t),
            entries: self.entries.clone(),
        }
    }

    /// Set `x_j = 0` in every entry, over the weights with `w_j` removed.
    pub fn restrict(&self, j: usize) -> Result<GradedMatrix> {
        let weights = self.weights.without(j)?;
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|p| p.restrict(j)).collect())
            .collect();
        Ok(GradedMatrix {
            weights,
            source: self.source.clone(),
            target: self.target.clone(),
            entries,
        })
    }

    /// Entrywise evaluation at a point.
    pub fn evaluate(&self, point: &[BigRational]) -> RationalMatrix {
        let rows = self
            .entries
            .iter()
            .map(|row| row.iter().map(|p| p.eval(point)).collect())
            .collect();
        RationalMatrix::from_rows(rows).expect("rectangular by construction")
    }
}

impl fmt::Debug for GradedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} -> {} over {}", self.source, self.target, self.weights)?;
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
