//! Weighted monomial combinatorics: `dim S_d` and explicit bases of `H^0(O(d))` and `H^n(O(d))`.

use std::collections::HashMap;
use std::sync::{LazyLock, Mutex};

use num_bigint::BigUint;
use num_traits::Zero;

use crate::Weights;

/// Exponent vector of a (Laurent) monomial, one entry per variable.
pub type ExponentVector = Vec<i64>;

static DENUMERANTS: LazyLock<Mutex<HashMap<Vec<i64>, Vec<BigUint>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

fn denumerant_table(w: &[i64], upto: usize) -> Vec<BigUint> {
    let mut table = vec![BigUint::zero(); upto + 1];
    table[0] = BigUint::from(1u32);
    for &wi in w {
        let wi = wi as usize;
        for d in wi..=upto {
            let (lo, hi) = table.split_at_mut(d);
            hi[0] += &lo[d - wi];
        }
    }
    table
}

/// Number of monomials of weighted degree `d`, i.e. `h^0(O(d))` for `n ≥ 1`.
pub fn denumerant(w: &Weights, d: i64) -> BigUint {
    if d < 0 {
        return BigUint::zero();
    }
    let d = d as usize;
    let key = w.as_slice().to_vec();
    let mut cache = DENUMERANTS.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(table) = cache.get(&key) {
        if d < table.len() {
            return table[d].clone();
        }
    }
    let len = cache.get(&key).map_or(0, Vec::len);
    let table = denumerant_table(&key, d.max(2 * len).max(64));
    let value = table[d].clone();
    cache.insert(key, table);
    value
}

/// All monomials of weighted degree `d`, in decreasing lexicographic order of exponents.
pub fn monomial_basis(w: &Weights, d: i64) -> Vec<ExponentVector> {
    let mut out = Vec::new();
    if d < 0 {
        return out;
    }
    let mut current = vec![0i64; w.num_vars()];
    fill_monomials(w.as_slice(), 0, d, &mut current, &mut out);
    out
}

fn fill_monomials(
    w: &[i64],
    i: usize,
    remaining: i64,
    current: &mut Vec<i64>,
    out: &mut Vec<ExponentVector>,
) {
    if i + 1 == w.len() {
        if remaining % w[i] == 0 {
            current[i] = remaining / w[i];
            out.push(current.clone());
        }
        return;
    }
    for a in (0..=remaining / w[i]).rev() {
        current[i] = a;
        fill_monomials(w, i + 1, remaining - a * w[i], current, out);
    }
    current[i] = 0;
}

/// Laurent monomials with every exponent `≤ -1` and weighted degree `d`: a basis of
/// `H^n(O(d))`.
///
/// The order is the image of `monomial_basis(w, -d - w̄)` under `m ↦ -m - 1`, so top
/// cohomology matrices are exact transposes of the dual `H^0` matrices.
pub fn laurent_basis(w: &Weights, d: i64) -> Vec<ExponentVector> {
    monomial_basis(w, -d - w.total())
        .into_iter()
        .map(|m| m.into_iter().map(|a| -a - 1).collect())
        .collect()
}

/// Index lookup for a basis, used when assembling multiplication matrices.
pub(crate) fn index_of(basis: &[ExponentVector]) -> HashMap<&[i64], usize> {
    basis
        .iter()
        .enumerate()
        .map(|(i, e)| (e.as_slice(), i))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(raw: &[i64]) -> Weights {
        Weights::new(raw).unwrap()
    }

    fn brute_count(w: &[i64], d: i64) -> u64 {
        // independent nested enumeration over bounded boxes
        fn go(w: &[i64], d: i64) -> u64 {
            match w.split_first() {
                None => u64::from(d == 0),
                Some((&first, rest)) => (0..=d.max(-1) / first)
                    .filter(|a| d - a * first >= 0)
                    .map(|a| go(rest, d - a * first))
                    .sum(),
            }
        }
        if d < 0 {
            0
        } else {
            go(w, d)
        }
    }

    #[test]
    fn denumerant_examples() {
        assert_eq!(denumerant(&w(&[3, 2]), 1), BigUint::zero());
        assert_eq!(denumerant(&w(&[3, 2]), 6), BigUint::from(2u32));
        for raw in [&[3i64, 2][..], &[1, 1, 1], &[5, 3, 2]] {
            assert_eq!(denumerant(&w(raw), 0), BigUint::from(1u32));
            assert_eq!(denumerant(&w(raw), -3), BigUint::zero());
        }
    }

    #[test]
    fn denumerant_large_twist_does_not_overflow() {
        let ws = w(&[1, 1, 1, 1]);
        // C(d + 3, 3)
        let d = 100_000i64;
        let expected = BigUint::from(((d + 1) * (d + 2) * (d + 3) / 6) as u64);
        assert_eq!(denumerant(&ws, d), expected);
    }

    #[test]
    fn basis_examples() {
        assert_eq!(
            monomial_basis(&w(&[5, 3, 2]), 5),
            vec![vec![1, 0, 0], vec![0, 1, 1]]
        );
        assert!(monomial_basis(&w(&[3, 2]), -1).is_empty());
        assert_eq!(monomial_basis(&w(&[2]), 4), vec![vec![2]]);
        assert_eq!(monomial_basis(&w(&[3, 2]), 6), vec![vec![2, 0], vec![0, 3]]);
    }

    #[test]
    fn laurent_examples() {
        assert_eq!(laurent_basis(&w(&[3, 2]), -5), vec![vec![-1, -1]]);
        assert!(laurent_basis(&w(&[3, 2]), -6).is_empty());
        assert_eq!(laurent_basis(&w(&[1, 1]), -2), vec![vec![-1, -1]]);
    }

    #[test]
    fn generating_function_truncation() {
        // Π 1/(1 - x^{w_i}) expanded by repeated polynomial multiplication up to x^60
        for raw in [&[3i64, 2][..], &[5, 3, 2], &[3, 2, 2, 1], &[6, 4, 4, 1], &[1]] {
            let ws = w(raw);
            let bound = 60usize;
            let mut series = vec![0u64; bound + 1];
            series[0] = 1;
            for &wi in raw {
                let mut geometric = vec![0u64; bound + 1];
                for j in (0..=bound).step_by(wi as usize) {
                    geometric[j] = 1;
                }
                let mut product = vec![0u64; bound + 1];
                for (i, a) in series.iter().enumerate() {
                    for (j, b) in geometric.iter().enumerate().take(bound + 1 - i) {
                        product[i + j] += a * b;
                    }
                }
                series = product;
            }
            for (d, coeff) in series.iter().enumerate() {
                assert_eq!(denumerant(&ws, d as i64), BigUint::from(*coeff), "{raw:?} d={d}");
            }
        }
    }

    fn weights_strategy() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(1i64..=6, 1..=4).prop_map(|mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            v
        })
    }

    proptest! {
        #[test]
        fn basis_length_matches_count(raw in weights_strategy(), d in -20i64..=40) {
            let ws = w(&raw);
            let basis = monomial_basis(&ws, d);
            prop_assert_eq!(BigUint::from(basis.len()), denumerant(&ws, d));
            prop_assert_eq!(basis.len() as u64, brute_count(&raw, d));
            prop_assert!(basis.iter().all(|e| ws.degree_of(e) == d && e.iter().all(|&a| a >= 0)));
            prop_assert!(basis.windows(2).all(|p| p[0] > p[1]));
        }

        #[test]
        fn laurent_duality(raw in weights_strategy(), d in -60i64..=20) {
            let ws = w(&raw);
            let lb = laurent_basis(&ws, d);
            prop_assert_eq!(BigUint::from(lb.len()), denumerant(&ws, -d - ws.total()));
            prop_assert!(lb.iter().all(|e| ws.degree_of(e) == d && e.iter().all(|&a| a <= -1)));
        }
    }
}
