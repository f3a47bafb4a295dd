use serde::{Deserialize, Serialize};

use super::GradedMatrix;
use crate::cohomology::h0_matrix;

/// `[start, start + width)` is a run of degrees where a finitely generated graded module
/// vanishes, with `start` above every generator degree. Multiplication by the variable of
/// largest weight then forces vanishing in every degree `≥ start`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub start: i64,
    pub width: i64,
}

impl Window {
    /// The window of a module that is zero in every degree.
    pub(crate) fn everywhere(width: i64) -> Window {
        Window {
            start: i64::MIN / 4,
            width,
        }
    }

    pub fn is_everywhere(self) -> bool {
        self.start <= i64::MIN / 8
    }

    pub fn shifted(self, s: i64) -> Window {
        if self.is_everywhere() {
            return self;
        }
        Window {
            start: self.start + s,
            width: self.width,
        }
    }
}

/// Looks for a vanishing window of `coker(H⁰_*(map))`, the graded module whose generators
/// sit in degrees `-target`. Scans at most `cap` degrees past the first admissible start.
pub fn certify_cokernel_vanishes(map: &GradedMatrix, cap: i64) -> Option<Window> {
    let width = map.weights().weight(0);
    let Some(top) = map.target().min().map(|m| -m) else {
        // zero target: the module is zero everywhere
        return Some(Window::everywhere(width));
    };
    let first = top + 1;
    let mut run_start = first;
    let mut t = first;
    while t <= first + cap.max(0) + width {
        if vanishes_in_degree(map, t) {
            if t - run_start + 1 == width {
                return Some(Window {
                    start: run_start,
                    width,
                });
            }
        } else {
            run_start = t + 1;
            if run_start > first + cap.max(0) {
                return None;
            }
        }
        t += 1;
    }
    None
}

/// Scan length after which a cokernel presented by `map` would be unusually late to vanish:
/// the socle degree of a complete intersection cut out by its `n + 1` largest entry degrees,
/// plus one window. Only used to bound searches whose failure is an acceptable outcome.
pub fn complete_intersection_cap(map: &GradedMatrix) -> i64 {
    let w = map.weights();
    let mut degrees: Vec<i64> = Vec::new();
    for (i, row) in map.entries().iter().enumerate() {
        for (j, p) in row.iter().enumerate() {
            if !p.is_zero() {
                degrees.push(map.target().twists()[i] - map.source().twists()[j]);
            }
        }
    }
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    let top: i64 = degrees.iter().take(w.num_vars()).sum();
    (top - w.total()).max(0) + w.weight(0)
}

/// Large prime for the fast test below.
const PRIME: u64 = 2_147_483_647;

/// Whether `H⁰(map(t))` is onto. Full rank modulo a prime implies full rank over `Q`, so a
/// `true` here is exact; a rare false negative only makes the window search more cautious.
fn vanishes_in_degree(map: &GradedMatrix, t: i64) -> bool {
    let m = h0_matrix(map, t);
    if m.rows() == 0 {
        return true;
    }
    if m.cols() < m.rows() {
        return false;
    }
    match m.rank_modular(PRIME) {
        Ok(r) => r == m.rows(),
        Err(_) => m.rank_exact() == m.rows(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;
    use crate::sheaf::SplitBundle;
    use crate::Weights;

    fn row_map(w: &[i64], target: i64, polys: &[&str]) -> GradedMatrix {
        let ww = Weights::new(w).unwrap();
        let n = w.len();
        let entries: Vec<Polynomial> = polys.iter().map(|p| Polynomial::parse(p, n).unwrap()).collect();
        let source = entries
            .iter()
            .map(|p| target - p.weighted_degree(&ww).unwrap().unwrap())
            .collect();
        GradedMatrix::new(ww, SplitBundle::new(source), SplitBundle::line(target), vec![entries]).unwrap()
    }

    #[test]
    fn irrelevant_ideal_has_finite_cokernel() {
        let m = row_map(&[3, 2], 0, &["x0", "x1"]);
        let win = certify_cokernel_vanishes(&m, 20).unwrap();
        assert_eq!(win, Window { start: 1, width: 3 });
    }

    #[test]
    fn missing_variable_never_stabilizes() {
        let m = row_map(&[3, 2, 1], 0, &["x0", "x1"]);
        assert!(certify_cokernel_vanishes(&m, 30).is_none());
    }

    #[test]
    fn powers_need_a_later_window() {
        // (x0^2, x1^3) on P(3,2): socle in degree 3 + 4 = 7, so the module dies from 8 on
        let m = row_map(&[3, 2], 0, &["x0^2", "x1^3"]);
        let win = certify_cokernel_vanishes(&m, 40).unwrap();
        assert_eq!(win.start, 8);
    }
}
