//! Brute-force routes used to cross-check the engine. Nothing here calls the counting,
//! basis or elimination code it is meant to check.

use num_rational::BigRational;
use num_traits::Zero;

use crate::cohomology::{h0_matrix, hn_matrix};
use crate::linalg::RationalMatrix;
use crate::sheaf::{Leaf, Monad, SheafExpr};
use crate::{Result, Weights};

/// Counts of monomials and of all-negative Laurent monomials of degree `d`, by nested loops.
/// These are `h⁰(O(d))` and `hⁿ(O(d))`; on a point both count the Laurent monomials `x0^e`.
pub fn oracle_cohom_split(w: &Weights, d: i64) -> (u64, u64) {
    fn count(ws: &[i64], rest: i64, lowest: i64) -> u64 {
        // solutions of Σ e_i w_i = rest with every e_i ≥ lowest (lowest ∈ {0, 1})
        match ws {
            [] => u64::from(rest == 0),
            [w, tail @ ..] => {
                let mut total = 0;
                let mut e = lowest;
                while e * w <= rest {
                    total += count(tail, rest - e * w, lowest);
                    e += 1;
                }
                total
            }
        }
    }
    let ws = w.as_slice();
    if let [w0] = ws {
        let hit = (0..=d.abs()).any(|e| e * w0 == d.abs());
        return (u64::from(hit), u64::from(hit));
    }
    let h0 = if d < 0 { 0 } else { count(ws, d, 0) };
    // exponents e_i ≤ -1 with Σ e_i w_i = d, written as f_i = -e_i ≥ 1
    let hn = if d > 0 { 0 } else { count(ws, -d, 1) };
    (h0, hn)
}

/// Rank by textbook Gaussian elimination over `Q` on a dense copy.
#[allow(clippy::needless_range_loop)]
pub fn gauss_rank(m: &RationalMatrix) -> usize {
    let mut a = m.to_dense();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            if a[r][c].is_zero() {
                continue;
            }
            let f: BigRational = &a[r][c] / &a[rank][c];
            for cc in c..cols {
                let sub = &f * &a[rank][cc];
                a[r][cc] -= sub;
            }
        }
        rank += 1;
    }
    rank
}

/// The four induced matrices a monad's cohomology uses at twist `t`.
pub fn monad_matrices(m: &Monad, t: i64) -> Vec<(&'static str, RationalMatrix)> {
    vec![
        ("H0(alpha)", h0_matrix(m.alpha(), t)),
        ("H0(beta)", h0_matrix(m.beta(), t)),
        ("Hn(alpha)", hn_matrix(m.alpha(), t)),
        ("Hn(beta)", hn_matrix(m.beta(), t)),
    ]
}

/// For every matrix behind `cohom(e, t)`: the engine rank equals the dense elimination rank,
/// no modular rank exceeds it, and at least one prime attains it.
pub fn oracle_rank_crosscheck(e: &SheafExpr, t: i64, primes: &[u64]) -> Result<bool> {
    for leaf in e.leaves() {
        let Leaf::Monad(m) = leaf else { continue };
        for (_, matrix) in monad_matrices(&m, t) {
            let exact = matrix.rank_exact();
            if exact != gauss_rank(&matrix) {
                return Ok(false);
            }
            let mut attained = primes.is_empty() && exact == 0;
            for &p in primes {
                let r = matrix.rank_modular(p)?;
                if r > exact {
                    return Ok(false);
                }
                attained |= r == exact;
            }
            if !attained {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `hⁿ(E(t))` of a monad's homology computed from the sections maps of the dual monad at
/// `-t - w̄`, whose transposes are the top cohomology maps.
pub fn top_cohomology_via_dual(m: &Monad, t: i64) -> usize {
    let s = -t - m.weights().total();
    // Hⁿ(beta)(t) is the transpose of H⁰(beta^T)(s), and likewise for alpha
    let beta_dual = h0_matrix(&m.beta().transpose(), s);
    let alpha_dual = h0_matrix(&m.alpha().transpose(), s);
    let ker_beta = beta_dual.rows() - gauss_rank(&beta_dual);
    ker_beta - gauss_rank(&alpha_dual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::line_bundle_h;
    use num_bigint::BigUint;

    fn w(raw: &[i64]) -> Weights {
        Weights::new(raw).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(oracle_cohom_split(&w(&[3, 2]), 6), (2, 0));
        assert_eq!(oracle_cohom_split(&w(&[3, 2]), -5), (0, 1));
        assert_eq!(oracle_cohom_split(&w(&[1, 1]), -2), (0, 1));
    }

    #[test]
    fn agrees_with_engine_on_small_spaces() {
        for raw in [&[6i64, 4, 3, 1][..], &[5, 5, 2], &[4, 1], &[3, 3, 3, 3]] {
            let ww = w(raw);
            for d in -40..=40 {
                let (h0, hn) = oracle_cohom_split(&ww, d);
                assert_eq!(line_bundle_h(&ww, 0, d), BigUint::from(h0));
                assert_eq!(line_bundle_h(&ww, ww.dim(), d), BigUint::from(hn));
            }
        }
    }

    #[test]
    fn gauss_rank_small() {
        let m = RationalMatrix::from_i64(3, &[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(gauss_rank(&m), 2);
        assert_eq!(gauss_rank(&RationalMatrix::zeros(2, 5)), 0);
    }

    #[test]
    fn split_leaves_are_vacuous() {
        let e = SheafExpr::split(w(&[3, 2]), vec![-5, 4]);
        assert!(oracle_rank_crosscheck(&e, 0, &[10007]).unwrap());
    }
}
