use serde::{Deserialize, Serialize};

use crate::Weights;

/// Knobs shared by every search that needs a finite cutoff or randomness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Settings {
    /// Seed for the evaluation points used by injectivity certificates.
    pub seed: u64,
    /// How many degrees a stabilization search may scan. `None` uses
    /// `4 * (w̄ + spread of twists)`.
    pub window_cap: Option<i64>,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            seed: 0x5eed,
            window_cap: None,
        }
    }
}

impl Settings {
    pub fn cap_for(&self, w: &Weights, twists: impl IntoIterator<Item = i64>) -> i64 {
        self.window_cap.unwrap_or_else(|| {
            let (lo, hi) = twists
                .into_iter()
                .fold((i64::MAX, i64::MIN), |(lo, hi), t| (lo.min(t), hi.max(t)));
            let spread = if lo > hi { 0 } else { hi - lo };
            4 * (w.total() + spread)
        })
    }
}
