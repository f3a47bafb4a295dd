//! Exact linear algebra over `Q`.
//!
//! Ranks are computed by fraction-free elimination over `Z`: each row is scaled by the lcm of
//! its denominators, then rows are reduced against an echelon of primitive integer rows. Rows
//! are taken in order and the pivot of a row is its first nonzero column, so every reported
//! dimension is reproducible.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

type SparseRow<T> = Vec<(usize, T)>;

/// A matrix of exact rationals, stored row-sparse.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    nrows: usize,
    ncols: usize,
    data: Vec<SparseRow<BigRational>>,
}

impl RationalMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        RationalMatrix {
            nrows,
            ncols,
            data: vec![Vec::new(); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i].push((i, BigRational::one()));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let nrows = rows.len();
        let data = rows
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        Ok(RationalMatrix { nrows, ncols, data })
    }

    /// Convenience constructor from small integers; `ncols` is needed for empty row lists.
    pub fn from_i64(ncols: usize, rows: &[Vec<i64>]) -> Self {
        let data = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), ncols, "row length");
                r.iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0)
                    .map(|(j, &v)| (j, BigRational::from_integer(v.into())))
                    .collect()
            })
            .collect();
        RationalMatrix {
            nrows: rows.len(),
            ncols,
            data,
        }
    }

    pub(crate) fn from_sparse(
        nrows: usize,
        ncols: usize,
        rows: Vec<BTreeMap<usize, BigRational>>,
    ) -> Self {
        debug_assert_eq!(rows.len(), nrows);
        let data = rows
            .into_iter()
            .map(|r| r.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        RationalMatrix { nrows, ncols, data }
    }

    pub fn rows(&self) -> usize {
        self.nrows
    }

    pub fn cols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, r: usize, c: usize) -> BigRational {
        self.data[r]
            .binary_search_by_key(&c, |(j, _)| *j)
            .map(|i| self.data[r][i].1.clone())
            .unwrap_or_else(|_| BigRational::zero())
    }

    pub fn to_dense(&self) -> Vec<Vec<BigRational>> {
        let mut out = vec![vec![BigRational::zero(); self.ncols]; self.nrows];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                out[i][*j] = v.clone();
            }
        }
        out
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigRational)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> Self {
        let mut data: Vec<SparseRow<BigRational>> = vec![Vec::new(); self.ncols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                data[*j].push((i, v.clone()));
            }
        }
        RationalMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            data,
        }
    }

    pub fn mul(&self, rhs: &RationalMatrix) -> Result<Self> {
        if self.ncols != rhs.nrows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows, self.ncols, rhs.nrows, rhs.ncols
            )));
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
                for (k, a) in row {
                    for (j, b) in &rhs.data[*k] {
                        *acc.entry(*j).or_insert_with(BigRational::zero) += a * b;
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        Ok(RationalMatrix {
            nrows: self.nrows,
            ncols: rhs.ncols,
            data,
        })
    }

    /// Side-by-side concatenation `[self | other]`.
    pub fn hstack(&self, other: &RationalMatrix) -> Result<Self> {
        if self.nrows != other.nrows {
            return Err(Error::Shape("hstack row mismatch".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                a.iter()
                    .cloned()
                    .chain(b.iter().map(|(j, v)| (j + self.ncols, v.clone())))
                    .collect()
            })
            .collect();
        Ok(RationalMatrix {
            nrows: self.nrows,
            ncols: self.ncols + other.ncols,
            data,
        })
    }

    /// Matrix whose columns are the given vectors (each of length `nrows`).
    pub fn from_columns(nrows: usize, columns: &[Vec<BigRational>]) -> Self {
        let mut data: Vec<SparseRow<BigRational>> = vec![Vec::new(); nrows];
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), nrows, "column length");
            for (i, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    data[i].push((j, v.clone()));
                }
            }
        }
        RationalMatrix {
            nrows,
            ncols: columns.len(),
            data,
        }
    }

    pub fn column(&self, j: usize) -> Vec<BigRational> {
        (0..self.nrows).map(|i| self.get(i, j)).collect()
    }

    pub fn apply(&self, v: &[BigRational]) -> Vec<BigRational> {
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .fold(BigRational::zero(), |acc, (j, a)| acc + a * &v[*j])
            })
            .collect()
    }

    /// Rank over `Q` by fraction-free integer elimination.
    pub fn rank_exact(&self) -> usize {
        let mut echelon = Echelon::default();
        for row in &self.data {
            echelon.insert_sparse(row);
        }
        echelon.rank()
    }

    pub fn kernel_dim(&self) -> usize {
        self.ncols - self.rank_exact()
    }

    pub fn cokernel_dim(&self) -> usize {
        self.nrows - self.rank_exact()
    }

    /// Rank of the reduction modulo the prime `p`.
    pub fn rank_modular(&self, p: u64) -> Result<usize> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let pb = BigInt::from(p);
        let reduce = |x: &BigInt| -> u64 { x.mod_floor(&pb).to_u64().expect("residue fits") };
        let mut rows = Vec::with_capacity(self.nrows);
        for row in &self.data {
            let mut reduced = Vec::with_capacity(row.len());
            for (j, v) in row {
                let den = reduce(v.denom());
                if den == 0 {
                    return Err(Error::BadPrime(p));
                }
                let x = mul_mod(reduce(v.numer()), inv_mod(den, p), p);
                if x != 0 {
                    reduced.push((*j, x));
                }
            }
            rows.push(reduced);
        }
        Ok(rank_mod_p(rows, p))
    }

    /// Basis of the right kernel, one vector per free column of the reduced row echelon
    /// form, in increasing order of free column.
    pub fn kernel_basis(&self) -> Vec<Vec<BigRational>> {
        let (rref, pivots) = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.ncols];
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        (0..self.ncols)
            .filter(|&c| pivot_set[c].is_none())
            .map(|free| {
                let mut v = vec![BigRational::zero(); self.ncols];
                v[free] = BigRational::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -rref[r][free].clone();
                }
                v
            })
            .collect()
    }

    /// Some `x` with `self * x = b`, if one exists.
    pub fn solve(&self, b: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(b.len(), self.nrows, "right-hand side length");
        let augmented = self
            .hstack(&RationalMatrix::from_columns(self.nrows, &[b.to_vec()]))
            .expect("same row count");
        let (rref, pivots) = augmented.rref();
        if pivots.last() == Some(&self.ncols) {
            return None;
        }
        let mut x = vec![BigRational::zero(); self.ncols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = rref[r][self.ncols].clone();
        }
        Some(x)
    }

    /// Reduced row echelon form (dense) and the pivot column of each nonzero row.
    fn rref(&self) -> (Vec<Vec<BigRational>>, Vec<usize>) {
        let mut m = self.to_dense();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            let Some(p) = (r..self.nrows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].recip();
            for v in m[r].iter_mut().skip(c) {
                *v *= &inv;
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let factor = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row).skip(c) {
                    if !pv.is_zero() {
                        *v -= &factor * pv;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == self.nrows {
                break;
            }
        }
        m.truncate(r);
        (m, pivots)
    }
}

/// `dim ker(b) / im(a)` for a complex `· --a--> · --b--> ·`.
pub fn subquotient_dim(a: &RationalMatrix, b: &RationalMatrix) -> Result<usize> {
    if b.cols() != a.rows() {
        return Err(Error::Shape(format!(
            "{}x{} followed by {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    if !b.mul(a)?.is_zero() {
        return Err(Error::NotAComplex);
    }
    Ok(b.kernel_dim() - a.rank_exact())
}

/// Incremental row echelon over `Z`, used to grow a basis one vector at a time.
#[derive(Default)]
pub(crate) struct Echelon {
    rows: BTreeMap<usize, SparseRow<BigInt>>,
}

impl Echelon {
    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `row` and reports whether it was independent of the rows already present.
    pub(crate) fn insert_sparse(&mut self, row: &[(usize, BigRational)]) -> bool {
        let mut r = clear_denominators(row);
        while let Some(&(lead, _)) = r.first() {
            match self.rows.get(&lead) {
                Some(pivot) => r = eliminate(&r, pivot),
                None => {
                    self.rows.insert(lead, r);
                    return true;
                }
            }
        }
        false
    }

    pub(crate) fn insert(&mut self, v: &[BigRational]) -> bool {
        let sparse: SparseRow<BigRational> = v
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| (j, x.clone()))
            .collect();
        self.insert_sparse(&sparse)
    }
}

fn clear_denominators(row: &[(usize, BigRational)]) -> SparseRow<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let ints: SparseRow<BigInt> = row
        .iter()
        .map(|(j, v)| (*j, v.numer() * (&lcm / v.denom())))
        .collect();
    primitive(ints)
}

fn primitive(mut row: SparseRow<BigInt>) -> SparseRow<BigInt> {
    let content = row
        .iter()
        .fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if !content.is_zero() && !content.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &content;
        }
    }
    if row.first().is_some_and(|(_, v)| v.is_negative()) {
        for (_, v) in row.iter_mut() {
            *v = -&*v;
        }
    }
    row
}

/// Cancel the leading entry of `row` against `pivot` (same leading column).
fn eliminate(row: &SparseRow<BigInt>, pivot: &SparseRow<BigInt>) -> SparseRow<BigInt> {
    let a = &pivot[0].1;
    let b = &row[0].1;
    let g = a.gcd(b);
    let ma = a / &g;
    let mb = b / &g;
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        let (col, value) = if ci < cj {
            i += 1;
            (ci, &ma * &row[i - 1].1)
        } else if cj < ci {
            j += 1;
            (cj, -(&mb * &pivot[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (ci, &ma * &row[i - 1].1 - &mb * &pivot[j - 1].1)
        };
        if !value.is_zero() {
            out.push((col, value));
        }
    }
    primitive(out)
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut result, mut base, mut exp) = (1u64, a % p, p - 2);
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    result
}

/// Sparse elimination modulo `p`; rows are reduced against pivots keyed by leading column.
fn rank_mod_p(rows: Vec<SparseRow<u64>>, p: u64) -> usize {
    let mut pivots: BTreeMap<usize, SparseRow<u64>> = BTreeMap::new();
    for mut r in rows {
        while let Some(&(lead, v)) = r.first() {
            match pivots.get(&lead) {
                Some(pivot) => r = axpy_mod(&r, p - v, pivot, p),
                None => {
                    let inv = inv_mod(v, p);
                    let normalized = r.iter().map(|&(j, x)| (j, mul_mod(x, inv, p))).collect();
                    pivots.insert(lead, normalized);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// `row + f * pivot` modulo `p`.
fn axpy_mod(row: &[(usize, u64)], f: u64, pivot: &[(usize, u64)], p: u64) -> SparseRow<u64> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        let (col, value) = if ci < cj {
            i += 1;
            (ci, row[i - 1].1)
        } else if cj < ci {
            j += 1;
            (cj, mul_mod(f, pivot[j - 1].1, p))
        } else {
            i += 1;
            j += 1;
            (ci, (row[i - 1].1 + mul_mod(f, pivot[j - 1].1, p)) % p)
        };
        if value != 0 {
            out.push((col, value));
        }
    }
    out
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.nrows, self.ncols)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Dense row-major form with entries as strings (`"p"` or `"p/q"`).
#[derive(Serialize, Deserialize)]
struct DenseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

impl Serialize for RationalMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DenseMatrix {
            rows: self.nrows,
            cols: self.ncols,
            entries: self
                .to_dense()
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect(),
        }
        .serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rank_examples() {
        assert_eq!(RationalMatrix::identity(2).rank_exact(), 2);
        assert_eq!(RationalMatrix::zeros(3, 4).rank_exact(), 0);
        let m = RationalMatrix::from_i64(2, &[vec![1, 2], vec![2, 4]]);
        assert_eq!(m.rank_exact(), 1);
        assert_eq!((m.kernel_dim(), m.cokernel_dim()), (1, 1));
        let z = RationalMatrix::zeros(3, 4);
        assert_eq!((z.kernel_dim(), z.cokernel_dim()), (4, 3));
        let id = RationalMatrix::identity(2);
        assert_eq!((id.kernel_dim(), id.cokernel_dim()), (0, 0));
    }

    #[test]
    fn rank_with_fractions() {
        let m = RationalMatrix::from_rows(vec![
            vec![q(1, 2), q(1, 3)],
            vec![q(3, 1), q(2, 1)],
            vec![q(1, 7), q(0, 1)],
        ])
        .unwrap();
        assert_eq!(m.rank_exact(), 2);
    }

    #[test]
    fn subquotient_examples() {
        let a = RationalMatrix::zeros(3, 0);
        let b = RationalMatrix::zeros(0, 3);
        assert_eq!(subquotient_dim(&a, &b).unwrap(), 3);

        let a = RationalMatrix::from_i64(1, &[vec![1], vec![0]]);
        let b = RationalMatrix::from_i64(2, &[vec![0, 1]]);
        assert_eq!(subquotient_dim(&a, &b).unwrap(), 0);

        let a = RationalMatrix::zeros(2, 1);
        let b = RationalMatrix::zeros(1, 2);
        assert_eq!(subquotient_dim(&a, &b).unwrap(), 2);

        let a = RationalMatrix::from_i64(1, &[vec![1], vec![1]]);
        let b = RationalMatrix::from_i64(2, &[vec![0, 1]]);
        assert_eq!(subquotient_dim(&a, &b), Err(Error::NotAComplex));
    }

    #[test]
    fn modular_examples() {
        assert_eq!(RationalMatrix::identity(2).rank_modular(5).unwrap(), 2);
        let m = RationalMatrix::from_i64(2, &[vec![1, 2], vec![2, 4]]);
        assert_eq!(m.rank_modular(7).unwrap(), 1);
        let five = RationalMatrix::from_i64(1, &[vec![5]]);
        assert_eq!(five.rank_modular(5).unwrap(), 0);
        assert_eq!(five.rank_exact(), 1);
        let frac = RationalMatrix::from_rows(vec![vec![q(1, 5)]]).unwrap();
        assert_eq!(frac.rank_modular(5), Err(Error::BadPrime(5)));
        assert_eq!(frac.rank_modular(6), Err(Error::NotPrime(6)));
    }

    #[test]
    fn kernel_and_solve() {
        let m = RationalMatrix::from_i64(3, &[vec![1, 2, 3], vec![2, 4, 6]]);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(m.apply(v).iter().all(Zero::is_zero));
        }
        let b = vec![q(3, 1), q(6, 1)];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.apply(&x), b);
        assert!(m.solve(&[q(1, 1), q(0, 1)]).is_none());
    }

    fn matrix_strategy() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
        (0usize..6, 0usize..6).prop_flat_map(|(r, c)| {
            (
                Just(c),
                prop::collection::vec(prop::collection::vec(-3i64..=3, c), r),
            )
        })
    }

    proptest! {
        #[test]
        fn rank_nullity((c, rows) in matrix_strategy()) {
            let m = RationalMatrix::from_i64(c, &rows);
            let r = m.rank_exact();
            prop_assert_eq!(r + m.kernel_dim(), m.cols());
            prop_assert_eq!(r + m.cokernel_dim(), m.rows());
            prop_assert_eq!(m.transpose().rank_exact(), r);
            prop_assert_eq!(m.kernel_basis().len(), m.kernel_dim());
        }

        #[test]
        fn rank_permutation_invariant((c, rows) in matrix_strategy(), seed in any::<u64>()) {
            let m = RationalMatrix::from_i64(c, &rows);
            let mut rows2 = rows.clone();
            if !rows2.is_empty() {
                let k = (seed as usize) % rows2.len();
                rows2.rotate_left(k);
            }
            for row in rows2.iter_mut() {
                row.reverse();
            }
            prop_assert_eq!(RationalMatrix::from_i64(c, &rows2).rank_exact(), m.rank_exact());
        }

        #[test]
        fn modular_rank_bounded((c, rows) in matrix_strategy()) {
            let m = RationalMatrix::from_i64(c, &rows);
            let exact = m.rank_exact();
            let mods: Vec<usize> = [1_000_000_007u64, 998_244_353, 1_073_741_789]
                .iter()
                .map(|&p| m.rank_modular(p).unwrap())
                .collect();
            prop_assert!(mods.iter().all(|&r| r <= exact));
            prop_assert!(mods.contains(&exact));
        }
    }
}
