use std::fmt;

use serde::{Deserialize, Serialize};

/// `⊕ O(d_i)`. Summand order is kept because matrices index into it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SplitBundle(Vec<i64>);

impl SplitBundle {
    pub fn new(twists: Vec<i64>) -> Self {
        SplitBundle(twists)
    }

    pub fn line(d: i64) -> Self {
        SplitBundle(vec![d])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn twists(&self) -> &[i64] {
        &self.0
    }

    pub fn twisted(&self, t: i64) -> Self {
        SplitBundle(self.0.iter().map(|d| d + t).collect())
    }

    pub fn dual(&self) -> Self {
        SplitBundle(self.0.iter().map(|d| -d).collect())
    }

    pub fn min(&self) -> Option<i64> {
        self.0.iter().copied().min()
    }

    pub fn max(&self) -> Option<i64> {
        self.0.iter().copied().max()
    }

    /// Twists in increasing order, the convention used for monad bounds.
    pub fn sorted(&self) -> Vec<i64> {
        let mut v = self.0.clone();
        v.sort_unstable();
        v
    }

    pub fn concat(&self, other: &SplitBundle) -> SplitBundle {
        SplitBundle(self.0.iter().chain(&other.0).copied().collect())
    }
}

impl fmt::Display for SplitBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|d| format!("O({d})")).collect();
        write!(f, "{}", parts.join("+"))
    }
}
