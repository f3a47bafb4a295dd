//! Weighted global generation of split sheaves.
//!
//! For `F = O(d)` the image of `⊕_j H⁰(F(k - w_j)) ⊗ O(w_j) → F(k)` is the sheaf associated
//! to the ideal generated by the monomials of degree `D = d + k` (none if `D ≤ 0`). The map is
//! surjective on the coarse space exactly when, on every chart `x_i ≠ 0`, each Laurent monomial
//! of degree `D` (exponent of `x_i` arbitrary, the others nonnegative) is a multiple of such a
//! generator. That condition is decided below by a finite search, since exponents beyond
//! `⌊D / w_j⌋` only matter through their residues.

use std::collections::HashSet;

use num_integer::Integer;
use serde::Serialize;

use crate::monomials::ExponentVector;
use crate::sheaf::SheafExpr;
use crate::{Error, Result, Weights};

/// Outcome for one affine chart `x_i ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChartCheck {
    pub i: usize,
    /// A Laurent monomial of the right degree outside the image, if any.
    pub witness: Option<ExponentVector>,
}

/// Surjectivity data for the ideal of all monomials of one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealCheck {
    pub degree: i64,
    pub verdict: bool,
    pub charts: Vec<ChartCheck>,
    /// Whether the graded cokernel has finite length, i.e. surjectivity also holds for the
    /// stack. This is stronger than the coarse condition.
    pub finite_length: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WggCertificate {
    pub verdict: bool,
    /// One entry per summand `O(d)`, checked in degree `d + k`.
    pub summands: Vec<IdealCheck>,
}

/// Whether `F(k)` is generated by the products `x_j · H⁰(F(k - w_j))`.
pub fn wgg_split(e: &SheafExpr) -> Result<WggCertificate> {
    let bundle = e.as_split().ok_or(Error::NotSplit)?;
    let w = e.weights();
    let summands: Vec<IdealCheck> = bundle
        .twists()
        .iter()
        .map(|d| check_degree(w, d + w.k()))
        .collect();
    Ok(WggCertificate {
        verdict: summands.iter().all(|s| s.verdict),
        summands,
    })
}

/// Whether `O(m)` is generated by its global sections.
pub fn gg_line(w: &Weights, m: i64) -> IdealCheck {
    check_degree(w, m)
}

fn check_degree(w: &Weights, degree: i64) -> IdealCheck {
    let charts: Vec<ChartCheck> = (0..w.num_vars())
        .map(|i| ChartCheck {
            i,
            witness: uncovered_in_chart(w, i, degree),
        })
        .collect();
    IdealCheck {
        degree,
        verdict: charts.iter().all(|c| c.witness.is_none()),
        charts,
        finite_length: degree > 0 && w.as_slice().iter().all(|wj| degree % wj == 0),
    }
}

struct ChartSearch<'a> {
    w: &'a Weights,
    i: usize,
    degree: i64,
    others: Vec<usize>,
    /// Sums `degree - t·w_i ≥ 0` that a generator can leave on the other coordinates.
    targets: Vec<bool>,
    seen: HashSet<(usize, Vec<bool>, i64, i64)>,
}

/// Choice for one coordinate: an exact exponent, or "at least the cap".
#[derive(Clone, Copy)]
enum Choice {
    Exact(i64),
    AtLeast(i64),
}

fn uncovered_in_chart(w: &Weights, i: usize, degree: i64) -> Option<ExponentVector> {
    let wi = w.weight(i);
    let top = degree.max(0) as usize;
    let mut targets = vec![false; top + 1];
    if degree > 0 {
        let mut v = degree;
        while v >= 0 {
            targets[v as usize] = true;
            v -= wi;
        }
    }
    let mut search = ChartSearch {
        w,
        i,
        degree,
        others: (0..w.num_vars()).filter(|&j| j != i).collect(),
        targets,
        seen: HashSet::new(),
    };
    let mut reachable = vec![false; top + 1];
    reachable[0] = true;
    if search.covered(&reachable) {
        return None;
    }
    let mut path = Vec::new();
    search.dfs(0, reachable, 0, wi, &mut path).map(|choices| search.witness(&choices))
}

impl ChartSearch<'_> {
    fn covered(&self, reachable: &[bool]) -> bool {
        reachable.iter().zip(&self.targets).any(|(r, t)| *r && *t)
    }

    /// Looks for exponents on the other coordinates whose achievable sub-sums miss every
    /// target and whose total is congruent to `degree` modulo `w_i`.
    fn dfs(
        &mut self,
        pos: usize,
        reachable: Vec<bool>,
        fixed: i64,
        modulus: i64,
        path: &mut Vec<Choice>,
    ) -> Option<Vec<Choice>> {
        let wi = self.w.weight(self.i);
        if pos == self.others.len() {
            return ((self.degree - fixed).mod_floor(&modulus) == 0).then(|| path.clone());
        }
        if !self.seen.insert((pos, reachable.clone(), fixed.mod_floor(&wi), modulus)) {
            return None;
        }
        let wj = self.w.weight(self.others[pos]);
        let cap = if self.degree > 0 { self.degree / wj } else { 0 };
        for a in 0..=cap {
            let next = extend(&reachable, wj, a);
            if self.covered(&next) {
                break;
            }
            let (choice, fixed2, modulus2) = if a < cap {
                (Choice::Exact(a), fixed + a * wj, modulus)
            } else {
                (Choice::AtLeast(a), fixed, modulus.gcd(&wj))
            };
            path.push(choice);
            let found = self.dfs(pos + 1, next, fixed2, modulus2, path);
            path.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }

    /// Concrete Laurent exponents realizing a path of choices.
    fn witness(&self, choices: &[Choice]) -> ExponentVector {
        let wi = self.w.weight(self.i);
        let mut exps: Vec<i64> = choices
            .iter()
            .map(|c| match c {
                Choice::Exact(a) | Choice::AtLeast(a) => *a,
            })
            .collect();
        let free: Vec<usize> = choices
            .iter()
            .enumerate()
            .filter(|(_, c)| matches!(c, Choice::AtLeast(_)))
            .map(|(p, _)| p)
            .collect();
        let total = |exps: &[i64]| -> i64 {
            exps.iter()
                .zip(&self.others)
                .map(|(a, &j)| a * self.w.weight(j))
                .sum()
        };
        // odometer over bumps in [0, w_i) for the free coordinates
        let base = exps.clone();
        let mut bumps = vec![0i64; free.len()];
        loop {
            for (slot, &p) in free.iter().enumerate() {
                exps[p] = base[p] + bumps[slot];
            }
            if (self.degree - total(&exps)).mod_floor(&wi) == 0 {
                break;
            }
            let Some(slot) = bumps.iter().position(|&b| b + 1 < wi) else {
                unreachable!("a residue was promised by the search");
            };
            bumps[slot] += 1;
            bumps[..slot].iter_mut().for_each(|b| *b = 0);
        }
        let mut out = vec![0i64; self.w.num_vars()];
        for (a, &j) in exps.iter().zip(&self.others) {
            out[j] = *a;
        }
        out[self.i] = (self.degree - total(&exps)) / wi;
        out
    }
}

/// Sub-sums after allowing `0..=a` copies of `wj`.
fn extend(reachable: &[bool], wj: i64, a: i64) -> Vec<bool> {
    let mut next = reachable.to_vec();
    for copies in 1..=a {
        let shift = (copies * wj) as usize;
        if shift >= reachable.len() {
            break;
        }
        for v in (shift..reachable.len()).rev() {
            if reachable[v - shift] {
                next[v] = true;
            }
        }
    }
    next
}
