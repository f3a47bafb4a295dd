//! Seeded random monads `O(a) → ⊕ O(b_j) → O(c)` for property suites and benchmarks.
//!
//! `beta` has random entries of degree `c - b_j` and `alpha = Ω beta^T` for a random
//! skew-symmetric `Ω`, so `beta ∘ alpha = beta Ω beta^T = 0` by construction. Draws whose
//! monad conditions cannot be certified are discarded.

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::monomials::monomial_basis;
use crate::poly::Polynomial;
use crate::sheaf::{certify_cokernel_vanishes, complete_intersection_cap, GradedMatrix, Monad, SplitBundle};
use crate::{Error, Result, Settings, Weights};

const MAX_DRAWS: usize = 200;

fn random_form<R: Rng>(rng: &mut R, w: &Weights, degree: i64) -> Polynomial {
    let mut p = Polynomial::zero(w.num_vars());
    for m in monomial_basis(w, degree) {
        let c: i64 = rng.gen_range(-3..=3);
        if c != 0 {
            p = p.add(&Polynomial::monomial(m, BigRational::from_integer(c.into())));
        }
    }
    p
}

/// One draw; `None` if the shape admits no nonzero skew part or the map is not certified.
fn draw<R: Rng>(rng: &mut R, w: &Weights, settings: &Settings) -> Result<Option<Monad>> {
    let nvars = w.num_vars();
    // degrees of the entries of beta: every weight once (so the entries can cut out the
    // empty set) plus up to two extra degrees
    let mut degrees: Vec<i64> = w.as_slice().to_vec();
    for _ in 0..rng.gen_range(0..=2) {
        degrees.push(*w.as_slice().choose(rng).expect("nonempty") * rng.gen_range(1..=2));
    }
    degrees.shuffle(rng);
    let c = rng.gen_range(1..=3);
    let b: Vec<i64> = degrees.iter().map(|d| c - d).collect();
    let b_min = *b.iter().min().expect("nonempty");
    let a = 2 * b_min - c - rng.gen_range(0..=1);
    let beta_row: Vec<Polynomial> = degrees.iter().map(|&d| random_form(rng, w, d)).collect();
    let r = b.len();
    let mut omega = vec![vec![Polynomial::zero(nvars); r]; r];
    for l in 0..r {
        for j in l + 1..r {
            let f = random_form(rng, w, b[l] + b[j] - a - c);
            omega[j][l] = f.neg();
            omega[l][j] = f;
        }
    }
    let alpha_col: Vec<Vec<Polynomial>> = (0..r)
        .map(|l| {
            let entry = (0..r).fold(Polynomial::zero(nvars), |acc, j| acc.add(&omega[l][j].mul(&beta_row[j])));
            vec![entry]
        })
        .collect();
    if alpha_col.iter().all(|e| e[0].is_zero()) {
        return Ok(None);
    }
    let bundle = SplitBundle::new(b);
    let beta = GradedMatrix::new(w.clone(), bundle.clone(), SplitBundle::line(c), vec![beta_row])?;
    let alpha = GradedMatrix::new(w.clone(), SplitBundle::line(a), bundle, alpha_col)?;
    // cheap rejection before the full validation, which may scan much further
    if certify_cokernel_vanishes(&beta, complete_intersection_cap(&beta)).is_none() {
        return Ok(None);
    }
    let monad = Monad::new(alpha, beta, settings)?;
    Ok(monad.validity().is_usable().then_some(monad))
}

/// A random monad on `P(w)` whose conditions are certified, drawn deterministically from `seed`.
pub fn random_monad(w: &Weights, seed: u64, settings: &Settings) -> Result<Monad> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_DRAWS {
        if let Some(m) = draw(&mut rng, w, settings)? {
            return Ok(m);
        }
    }
    Err(Error::SearchCap {
        what: "random certified monad".into(),
        steps: MAX_DRAWS as i64,
    })
}

/// A random direct sum of `1..=4` line bundles with twists in `lo..=hi`.
pub fn random_split(_w: &Weights, seed: u64, lo: i64, hi: i64) -> Vec<i64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = rng.gen_range(1..=4);
    (0..r).map(|_| rng.gen_range(lo..=hi)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_are_deterministic_and_valid() {
        let w = Weights::new(&[3, 2, 2, 1]).unwrap();
        let s = Settings::default();
        let m1 = random_monad(&w, 7, &s).unwrap();
        let m2 = random_monad(&w, 7, &s).unwrap();
        assert_eq!(m1, m2);
        assert!(m1.beta().compose(m1.alpha()).unwrap().is_zero());
        assert!(m1.validity().is_usable());
    }
}
