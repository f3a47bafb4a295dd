//! The ambient space `P(w_0, ..., w_n)` and its derived constants.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Weights of a weighted projective space, kept in the caller's (decreasing) order.
///
/// Weights are never normalized: coordinate hyperplanes of a well-formed space need not be
/// well-formed, so every tuple is treated as given.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Weights {
    w: Vec<i64>,
    lcm: i64,
    partial: Vec<i64>,
}

impl Weights {
    pub fn new(raw: &[i64]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyWeights);
        }
        for (index, &value) in raw.iter().enumerate() {
            if value < 1 {
                return Err(Error::NonPositiveWeight { index, value });
            }
        }
        for (index, pair) in raw.windows(2).enumerate() {
            if pair[0] < pair[1] {
                return Err(Error::NotDecreasing {
                    index: index + 1,
                    prev: pair[0],
                    next: pair[1],
                });
            }
        }
        let lcm = raw.iter().fold(1i64, |acc, &w| acc.lcm(&w));
        let partial = raw
            .iter()
            .scan(0i64, |acc, &w| {
                *acc += w;
                Some(*acc)
            })
            .collect();
        Ok(Weights {
            w: raw.to_vec(),
            lcm,
            partial,
        })
    }

    /// The all-ones weights of ordinary projective `n`-space.
    pub fn projective(n: usize) -> Self {
        Weights::new(&vec![1; n + 1]).expect("all-ones weights are valid")
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.w
    }

    pub fn weight(&self, i: usize) -> i64 {
        self.w[i]
    }

    pub fn num_vars(&self) -> usize {
        self.w.len()
    }

    /// Dimension `n` of the space.
    pub fn dim(&self) -> usize {
        self.w.len() - 1
    }

    /// `k`, the least common multiple of the weights.
    pub fn k(&self) -> i64 {
        self.lcm
    }

    /// `w̄_i = w_0 + ... + w_i`.
    pub fn partial_sum(&self, i: usize) -> i64 {
        self.partial[i]
    }

    pub fn partial_sums(&self) -> &[i64] {
        &self.partial
    }

    /// Total weight `w̄ = w̄_n`.
    pub fn total(&self) -> i64 {
        self.partial[self.partial.len() - 1]
    }

    /// Twist of the dualizing sheaf, `ω = O(-w̄)`.
    pub fn canonical_twist(&self) -> i64 {
        -self.total()
    }

    pub fn is_unweighted(&self) -> bool {
        self.w.iter().all(|&w| w == 1)
    }

    /// Weights with coordinate `j` removed: the hyperplane `x_j = 0`.
    pub fn without(&self, j: usize) -> Result<Weights> {
        if j >= self.w.len() {
            return Err(Error::IndexOutOfRange {
                index: j,
                vars: self.w.len(),
            });
        }
        let mut rest = self.w.clone();
        rest.remove(j);
        Weights::new(&rest)
    }

    /// Weighted degree `Σ e_i w_i` of an exponent vector.
    pub fn degree_of(&self, e: &[i64]) -> i64 {
        e.iter().zip(&self.w).map(|(a, w)| a * w).sum()
    }
}

impl TryFrom<Vec<i64>> for Weights {
    type Error = Error;

    fn try_from(raw: Vec<i64>) -> Result<Self> {
        Weights::new(&raw)
    }
}

impl From<Weights> for Vec<i64> {
    fn from(w: Weights) -> Self {
        w.w
    }
}

impl fmt::Display for Weights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P(")?;
        for (i, w) in self.w.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, ")")
    }
}
