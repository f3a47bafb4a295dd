//! Cohomology dimensions of split bundles and monads, and the maps that compute them.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::linalg::{Echelon, RationalMatrix};
use crate::monomials::{denumerant, index_of, laurent_basis, monomial_basis, ExponentVector};
use crate::sheaf::{GradedMatrix, Leaf, Monad, SheafExpr, SplitBundle};
use crate::{bignum, Error, Result, Settings, Weights};

/// The induced map `H⁰(source(t)) → H⁰(target(t))` in monomial bases.
pub fn h0_matrix(f: &GradedMatrix, t: i64) -> RationalMatrix {
    let w = f.weights();
    induced(f, t, |d| monomial_basis(w, d), |_| true)
}

/// The induced map `Hⁿ(source(t)) → Hⁿ(target(t))` in bases of Laurent monomials with every
/// exponent negative. Products leaving that range are zero in top cohomology.
pub fn hn_matrix(f: &GradedMatrix, t: i64) -> RationalMatrix {
    let w = f.weights();
    induced(f, t, |d| laurent_basis(w, d), |e| e.iter().all(|&a| a < 0))
}

fn induced(
    f: &GradedMatrix,
    t: i64,
    basis: impl Fn(i64) -> Vec<ExponentVector>,
    keep: impl Fn(&[i64]) -> bool,
) -> RationalMatrix {
    let row_bases: Vec<Vec<ExponentVector>> = f.target().twists().iter().map(|d| basis(d + t)).collect();
    let col_bases: Vec<Vec<ExponentVector>> = f.source().twists().iter().map(|d| basis(d + t)).collect();
    let row_index: Vec<_> = row_bases.iter().map(|b| index_of(b)).collect();
    let row_offsets = offsets(&row_bases);
    let nrows = row_offsets.last().copied().unwrap_or(0);
    let mut columns: Vec<BTreeMap<usize, BigRational>> = Vec::new();
    for (j, cb) in col_bases.iter().enumerate() {
        for m in cb {
            let mut col = BTreeMap::new();
            for (i, index) in row_index.iter().enumerate() {
                for (e, c) in f.entry(i, j).terms() {
                    let prod: ExponentVector = e.iter().zip(m).map(|(a, b)| a + b).collect();
                    if !keep(&prod) {
                        continue;
                    }
                    let r = row_offsets[i] + index[prod.as_slice()];
                    let slot = col.entry(r).or_insert_with(BigRational::zero);
                    *slot += c;
                }
            }
            col.retain(|_, v: &mut BigRational| !v.is_zero());
            columns.push(col);
        }
    }
    let ncols = columns.len();
    let mut rows = vec![BTreeMap::new(); nrows];
    for (c, col) in columns.into_iter().enumerate() {
        for (r, v) in col {
            rows[r].insert(c, v);
        }
    }
    RationalMatrix::from_sparse(nrows, ncols, rows)
}

fn offsets(blocks: &[Vec<ExponentVector>]) -> Vec<usize> {
    let mut out = vec![0];
    for b in blocks {
        out.push(out.last().unwrap() + b.len());
    }
    out
}

/// `h^i(O(d))` for a single line bundle.
pub fn line_bundle_h(w: &Weights, i: usize, d: i64) -> BigUint {
    let n = w.dim();
    if n == 0 {
        // P(w0) is a point: sections in every degree divisible by w0
        return if i == 0 && d.rem_euclid(w.weight(0)) == 0 {
            BigUint::one()
        } else {
            BigUint::zero()
        };
    }
    if i == 0 {
        denumerant(w, d)
    } else if i == n {
        denumerant(w, -d - w.total())
    } else {
        BigUint::zero()
    }
}

fn split_h(w: &Weights, b: &SplitBundle, i: usize, t: i64) -> BigUint {
    b.twists().iter().map(|d| line_bundle_h(w, i, d + t)).sum()
}

/// Cohomology of a monad's homology in one twist, with the two automatic identities
/// `ker H⁰(alpha) = 0` and `coker Hⁿ(beta) = 0` checked on the way.
#[derive(Clone, Debug)]
pub struct MonadSlice {
    pub h: Vec<usize>,
    pub consistent: bool,
}

fn require_usable(m: &Monad) -> Result<()> {
    let n = m.weights().dim();
    if n < 2 {
        return Err(Error::DimensionTooSmall {
            required: 2,
            found: n,
        });
    }
    let v = m.validity();
    if !v.beta_surjective.is_proven() {
        return Err(Error::InvalidMonad("beta is not certified surjective".into()));
    }
    if !v.alpha_injective.is_proven() {
        return Err(Error::InvalidMonad("alpha is not certified injective".into()));
    }
    Ok(())
}

pub fn monad_slice(m: &Monad, t: i64) -> Result<MonadSlice> {
    require_usable(m)?;
    let n = m.weights().dim();
    let h0a = h0_matrix(m.alpha(), t);
    let h0b = h0_matrix(m.beta(), t);
    let hna = hn_matrix(m.alpha(), t);
    let hnb = hn_matrix(m.beta(), t);
    let (r0a, r0b, rna, rnb) = (
        h0a.rank_exact(),
        h0b.rank_exact(),
        hna.rank_exact(),
        hnb.rank_exact(),
    );
    let coker0b = h0b.rows() - r0b;
    let ker_na = hna.cols() - rna;
    let mut h = vec![0usize; n + 1];
    h[0] = h0b.cols() - r0b - r0a;
    h[n] = hnb.cols() - rnb - rna;
    if n == 2 {
        h[1] = coker0b + ker_na;
    } else {
        h[1] = coker0b;
        h[n - 1] = ker_na;
    }
    let consistent = h0a.cols() == r0a && hnb.rows() == rnb;
    Ok(MonadSlice { h, consistent })
}

fn leaf_cohom(w: &Weights, leaf: &Leaf, t: i64) -> Result<(Vec<BigUint>, bool)> {
    match leaf {
        Leaf::Split(b) => Ok(((0..=w.dim()).map(|i| split_h(w, b, i, t)).collect(), true)),
        Leaf::Monad(m) => {
            let s = monad_slice(m, t)?;
            Ok((s.h.into_iter().map(BigUint::from).collect(), s.consistent))
        }
    }
}

/// `[h^0, ..., h^n]` of `e(t)`.
pub fn cohom(e: &SheafExpr, t: i64) -> Result<Vec<BigUint>> {
    Ok(cohom_checked(e, t)?.0)
}

fn cohom_checked(e: &SheafExpr, t: i64) -> Result<(Vec<BigUint>, bool)> {
    let w = e.weights();
    let mut total = vec![BigUint::zero(); w.dim() + 1];
    let mut consistent = true;
    for leaf in e.leaves() {
        let (h, ok) = leaf_cohom(w, &leaf, t)?;
        consistent &= ok;
        for (acc, x) in total.iter_mut().zip(h) {
            *acc += x;
        }
    }
    Ok((total, consistent))
}

/// `h^i(e(t))` without computing the other degrees of monad summands' split parts.
pub fn cohom_degree(e: &SheafExpr, i: usize, t: i64) -> Result<BigUint> {
    let w = e.weights();
    let mut total = BigUint::zero();
    for leaf in e.leaves() {
        total += match &leaf {
            Leaf::Split(b) => split_h(w, b, i, t),
            Leaf::Monad(m) => BigUint::from(monad_slice(m, t)?.h[i]),
        };
    }
    Ok(total)
}

pub fn euler_char(e: &SheafExpr, t: i64) -> Result<BigInt> {
    Ok(cohom(e, t)?
        .into_iter()
        .enumerate()
        .map(|(i, h)| {
            let h = BigInt::from(h);
            if i % 2 == 0 {
                h
            } else {
                -h
            }
        })
        .sum())
}

#[derive(Clone, Debug, Serialize)]
pub struct CohomologyRow {
    pub twist: i64,
    #[serde(serialize_with = "bignum::biguint_vec")]
    pub h: Vec<BigUint>,
    /// Both automatic identities of the monad spectral sequence held.
    pub consistent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CohomologyTable {
    pub weights: Vec<i64>,
    pub expr: String,
    pub rows: Vec<CohomologyRow>,
}

impl CohomologyTable {
    /// Rows for every twist in `lo..=hi`, computed in parallel.
    pub fn compute(e: &SheafExpr, lo: i64, hi: i64) -> Result<CohomologyTable> {
        let rows = (lo..=hi)
            .into_par_iter()
            .map(|t| {
                let (h, consistent) = cohom_checked(e, t)?;
                Ok(CohomologyRow { twist: t, h, consistent })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CohomologyTable {
            weights: e.weights().as_slice().to_vec(),
            expr: e.to_string(),
            rows,
        })
    }

    pub fn to_csv(&self) -> String {
        let n = self.weights.len() - 1;
        let mut out = String::from("twist");
        for i in 0..=n {
            out.push_str(&format!(",h{i}"));
        }
        out.push_str(",consistent\n");
        for row in &self.rows {
            out.push_str(&row.twist.to_string());
            for h in &row.h {
                out.push_str(&format!(",{h}"));
            }
            out.push_str(&format!(",{}\n", row.consistent));
        }
        out
    }
}

fn require_h1_dimension(e: &SheafExpr) -> Result<()> {
    let n = e.weights().dim();
    let has_monad = e.leaves().iter().any(|l| matches!(l, Leaf::Monad(_)));
    let required = if has_monad { 3 } else { 2 };
    if n < required {
        return Err(Error::DimensionTooSmall { required, found: n });
    }
    Ok(())
}

/// Degrees of a minimal generating set of `⊕_t H¹(e(t))`, with repetition, ascending.
pub fn h1_module_gens(e: &SheafExpr, settings: &Settings) -> Result<Vec<i64>> {
    require_h1_dimension(e)?;
    let mut out = Vec::new();
    for leaf in e.leaves() {
        let Leaf::Monad(m) = leaf else { continue };
        if !m.validity().beta_surjective.is_proven() {
            let w = m.weights();
            let twists = m.a().twists().iter().chain(m.b().twists()).chain(m.c().twists()).copied();
            return Err(Error::WindowExceeded {
                what: "H¹ module of a monad".into(),
                cap: settings.cap_for(w, twists.collect::<Vec<_>>()),
            });
        }
        require_usable(&m)?;
        let w = m.weights();
        let degrees: BTreeSet<i64> = m.c().twists().iter().map(|c| -c).collect();
        let lifts: Vec<GradedMatrix> = (0..w.num_vars())
            .map(|j| GradedMatrix::coordinate_multiplication(w, m.c(), j))
            .collect();
        for d in degrees {
            let mut span = h0_matrix(m.beta(), d);
            for x in &lifts {
                span = span.hstack(&h0_matrix(x, d))?;
            }
            let count = span.rows() - span.rank_exact();
            out.extend(std::iter::repeat_n(d, count));
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Twists of the outer terms of a minimal monad recovered from the `H¹` modules of `e` and
/// its dual. `l` and `l_dual` drop generators below the given degrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HorrocksShape {
    pub c: Vec<i64>,
    pub a: Vec<i64>,
}

pub fn horrocks_shape(
    e: &SheafExpr,
    l: Option<i64>,
    l_dual: Option<i64>,
    settings: &Settings,
) -> Result<HorrocksShape> {
    let gens = h1_module_gens(e, settings)?;
    let dual_gens = h1_module_gens(&e.dual(settings), settings)?;
    let mut c: Vec<i64> = gens
        .into_iter()
        .filter(|d| l.is_none_or(|l| *d >= l))
        .map(|d| -d)
        .collect();
    let mut a: Vec<i64> = dual_gens
        .into_iter()
        .filter(|d| l_dual.is_none_or(|l| *d >= l))
        .collect();
    c.sort_unstable();
    a.sort_unstable();
    Ok(HorrocksShape { c, a })
}

/// Basis of `H⁰(E(t))` for a monad: the image of `H⁰(A(t))` (independent columns) and
/// representatives completing it to a basis of `ker H⁰(beta)`, all inside `H⁰(B(t))`.
fn monad_sections(m: &Monad, t: i64) -> (Vec<Vec<BigRational>>, Vec<Vec<BigRational>>) {
    let image = h0_matrix(m.alpha(), t);
    let mut echelon = Echelon::default();
    let mut base = Vec::new();
    for c in 0..image.cols() {
        let v = image.column(c);
        if echelon.insert(&v) {
            base.push(v);
        }
    }
    let reps = h0_matrix(m.beta(), t)
        .kernel_basis()
        .into_iter()
        .filter(|v| echelon.insert(v))
        .collect();
    (base, reps)
}

/// Multiplication by `x_j` as a map `H⁰(e(t)) → H⁰(e(t + w_j))`.
pub fn multiplication_map(e: &SheafExpr, t: i64, j: usize) -> Result<RationalMatrix> {
    let w = e.weights();
    if j >= w.num_vars() {
        return Err(Error::IndexOutOfRange {
            index: j,
            vars: w.num_vars(),
        });
    }
    let blocks = e
        .leaves()
        .iter()
        .map(|leaf| match leaf {
            Leaf::Split(b) => {
                let x = GradedMatrix::coordinate_multiplication(w, &b.twisted(w.weight(j)), j);
                Ok(h0_matrix(&x, t))
            }
            Leaf::Monad(m) => {
                require_usable(m)?;
                let (_, reps) = monad_sections(m, t);
                let (base, reps_up) = monad_sections(m, t + w.weight(j));
                let x = GradedMatrix::coordinate_multiplication(w, &m.b().twisted(w.weight(j)), j);
                let xm = h0_matrix(&x, t);
                let frame: Vec<Vec<BigRational>> = base.iter().chain(&reps_up).cloned().collect();
                let frame = RationalMatrix::from_columns(xm.rows(), &frame);
                let cols: Vec<Vec<BigRational>> = reps
                    .iter()
                    .map(|q| {
                        let y = xm.apply(q);
                        let coords = frame.solve(&y).expect("x_j maps sections to sections");
                        coords[base.len()..].to_vec()
                    })
                    .collect();
                Ok(RationalMatrix::from_columns(reps_up.len(), &cols))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(block_diagonal(&blocks))
}

fn block_diagonal(blocks: &[RationalMatrix]) -> RationalMatrix {
    let nrows: usize = blocks.iter().map(RationalMatrix::rows).sum();
    let ncols: usize = blocks.iter().map(RationalMatrix::cols).sum();
    let mut rows = vec![BTreeMap::new(); nrows];
    let (mut r0, mut c0) = (0, 0);
    for b in blocks {
        for (r, c, v) in b.entries() {
            rows[r0 + r].insert(c0 + c, v.clone());
        }
        r0 += b.rows();
        c0 += b.cols();
    }
    RationalMatrix::from_sparse(nrows, ncols, rows)
}

/// Whether `H⁰(e(t))` is spanned by `x_j · H⁰(e(t - w_j))` over all `j`.
pub fn spanned_by_lower_sections(e: &SheafExpr, t: i64) -> Result<bool> {
    let w = e.weights();
    let target = cohom_degree(e, 0, t)?;
    let mut span: Option<RationalMatrix> = None;
    for j in 0..w.num_vars() {
        let m = multiplication_map(e, t - w.weight(j), j)?;
        span = Some(match span {
            None => m,
            Some(s) => s.hstack(&m)?,
        });
    }
    let rank = span.map_or(0, |s| s.rank_exact());
    Ok(BigUint::from(rank) == target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;

    fn w(raw: &[i64]) -> Weights {
        Weights::new(raw).unwrap()
    }

    fn h(e: &SheafExpr, t: i64) -> Vec<u64> {
        cohom(e, t)
            .unwrap()
            .into_iter()
            .map(|x| u64::try_from(x).unwrap())
            .collect()
    }

    #[test]
    fn line_bundles() {
        let ww = w(&[3, 2]);
        let o = SheafExpr::split(ww.clone(), vec![0]);
        assert_eq!(h(&o, 6), vec![2, 0]);
        assert_eq!(h(&o, -5), vec![0, 1]);
        assert_eq!(h(&o, -4), vec![0, 0]);
        assert_eq!(h(&o, -11), vec![0, 2]);
        let p2 = SheafExpr::split(Weights::projective(2), vec![0]);
        assert_eq!(h(&p2, -3), vec![0, 0, 1]);
        assert_eq!(h(&p2, 2), vec![6, 0, 0]);
        let point = SheafExpr::split(w(&[2]), vec![0]);
        assert_eq!(h(&point, 4), vec![1]);
        assert_eq!(h(&point, -2), vec![1]);
        assert_eq!(h(&point, 3), vec![0]);
    }

    #[test]
    fn top_cohomology_map_is_dual_of_sections_map() {
        let ww = w(&[3, 2, 1]);
        let f = GradedMatrix::new(
            ww.clone(),
            SplitBundle::new(vec![-3, -2]),
            SplitBundle::new(vec![0, 1]),
            vec![
                vec![Polynomial::parse("x0 + 2*x1*x2", 3).unwrap(), Polynomial::parse("x1", 3).unwrap()],
                vec![Polynomial::parse("x0*x2 + -x1^2", 3).unwrap(), Polynomial::parse("x0", 3).unwrap()],
            ],
        )
        .unwrap();
        for t in -14..-2 {
            let top = hn_matrix(&f, t);
            let sections = h0_matrix(&f.transpose(), -t - ww.total());
            assert_eq!(top, sections.transpose(), "twist {t}");
        }
    }

    fn euler_sequence_monad() -> Monad {
        // 0 → O(-1) → O(0)^4 → O(1) → 0 on P³; homology is the null-correlation style bundle
        let ww = Weights::projective(3);
        let p = |s: &str| Polynomial::parse(s, 4).unwrap();
        let beta = GradedMatrix::new(
            ww.clone(),
            SplitBundle::new(vec![0; 4]),
            SplitBundle::line(1),
            vec![vec![p("x0"), p("x1"), p("x2"), p("x3")]],
        )
        .unwrap();
        let alpha = GradedMatrix::new(
            ww,
            SplitBundle::line(-1),
            SplitBundle::new(vec![0; 4]),
            vec![vec![p("x1")], vec![p("-1*x0")], vec![p("x3")], vec![p("-1*x2")]],
        )
        .unwrap();
        Monad::new(alpha, beta, &Settings::default()).unwrap()
    }

    #[test]
    fn null_correlation_bundle() {
        let e = SheafExpr::monad(euler_sequence_monad());
        assert_eq!(h(&e, 0), vec![0, 0, 0, 0]);
        assert_eq!(h(&e, -1), vec![0, 1, 0, 0]);
        assert_eq!(h(&e, 1), vec![5, 0, 0, 0]);
        assert_eq!(h(&e, -3), vec![0, 0, 1, 0]);
        assert_eq!(h1_module_gens(&e, &Settings::default()).unwrap(), vec![-1]);
        let shape = horrocks_shape(&e, None, None, &Settings::default()).unwrap();
        assert_eq!(shape, HorrocksShape { c: vec![1], a: vec![-1] });
        for t in -6..4 {
            let chi = euler_char(&e, t).unwrap();
            let b = SheafExpr::split(e.weights().clone(), vec![0; 4]);
            let ac = SheafExpr::split(e.weights().clone(), vec![-1, 1]);
            assert_eq!(chi, euler_char(&b, t).unwrap() - euler_char(&ac, t).unwrap());
        }
    }

    #[test]
    fn multiplication_on_monad_sections() {
        let e = SheafExpr::monad(euler_sequence_monad());
        let m = multiplication_map(&e, 1, 0).unwrap();
        assert_eq!((m.rows(), m.cols()), (16, 5));
        assert_eq!(m.rank_exact(), 5);
        assert!(spanned_by_lower_sections(&e, 2).unwrap());
        assert!(!spanned_by_lower_sections(&e, 1).unwrap());
    }

    #[test]
    fn table_is_deterministic() {
        let e = SheafExpr::split(w(&[5, 3, 2]), vec![-5, 0, 7]);
        let a = CohomologyTable::compute(&e, -20, 20).unwrap();
        let b = CohomologyTable::compute(&e, -20, 20).unwrap();
        assert_eq!(a.to_csv(), b.to_csv());
        assert_eq!(a.rows.len(), 41);
        assert!(a.rows.iter().all(|r| r.consistent));
    }
}
