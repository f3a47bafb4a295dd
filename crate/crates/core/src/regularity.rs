//! Decisions for the regularity notions on weighted projective space.
//!
//! A condition "`h^i(F(s)) = 0` for all `s ≥ base`" is reduced to finitely many checks by a
//! threshold `T_i` above which `h^i` provably vanishes: Serre duality bounds for the top two
//! degrees, a stabilization window of the `H¹` module for monads, and identical vanishing
//! for the rest. Twists in `[base, T_i)` are then checked one by one.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::cohomology::{cohom, cohom_degree};
use crate::sheaf::{pullback_expand, Leaf, Monad, SheafExpr};
use crate::{bignum, Error, Result, Settings, Weights};

const DECREMENT_CAP: i64 = 64;
const H0_SEARCH_CAP: i64 = 64;
const CLASSIC_SEARCH_CAP: i64 = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RegularityKind {
    Wregular,
    Semiwregular,
    Toric,
    Classic,
}

/// `h^i(e(twist)) = value`; for `i = 0` this records the section count that was required
/// to be nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub i: usize,
    pub twist: i64,
    #[serde(serialize_with = "bignum::biguint")]
    pub value: BigUint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    /// `h^i` vanishes in every twist.
    Identically,
    /// Vanishing from `start` on follows from Serre duality and the split terms.
    Duality,
    /// Vanishing from `start` on follows from a window of the `H¹` module.
    Module,
    /// A single twist checked directly.
    Explicit,
}

/// How the condition on `h^i` was discharged: twists from `from` up to `start` were computed,
/// and `kind` covers everything from `start` on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindowCertificate {
    pub i: usize,
    pub kind: CertificateKind,
    pub from: i64,
    pub start: Option<i64>,
    pub width: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    pub kind: RegularityKind,
    pub m: i64,
    pub verdict: bool,
    pub witnesses: Vec<Witness>,
    pub windows: Vec<WindowCertificate>,
    /// `h⁰(e((m+1)k))` for the wregular kind.
    pub h0: Option<Witness>,
}

/// Twist from which `h^i` of a summand vanishes, or `None` if it vanishes everywhere.
#[derive(Clone, Copy, Debug)]
struct Threshold {
    start: Option<i64>,
    kind: CertificateKind,
    width: i64,
}

impl Threshold {
    const NONE: Threshold = Threshold {
        start: None,
        kind: CertificateKind::Identically,
        width: 0,
    };

    fn duality(start: i64) -> Threshold {
        Threshold {
            start: Some(start),
            kind: CertificateKind::Duality,
            width: 1,
        }
    }

    fn join(self, other: Threshold) -> Threshold {
        match (self.start, other.start) {
            (_, None) => self,
            (None, _) => other,
            (Some(a), Some(b)) if b > a => other,
            _ => self,
        }
    }
}

fn top_threshold(w: &Weights, min_twist: Option<i64>) -> Threshold {
    // h^n(O(d + s)) = h^0(O(-d - s - w̄)) vanishes once s > -w̄ - d
    min_twist.map_or(Threshold::NONE, |d| Threshold::duality(-w.total() - d + 1))
}

fn monad_thresholds(m: &Monad, settings: &Settings) -> Result<Vec<Threshold>> {
    let w = m.weights();
    let n = w.dim();
    let v = m.validity();
    let Some(window) = v.beta_window else {
        let twists: Vec<i64> = m.a().twists().iter().chain(m.b().twists()).chain(m.c().twists()).copied().collect();
        return Err(Error::WindowExceeded {
            what: "surjectivity window of a monad".into(),
            cap: settings.cap_for(w, twists),
        });
    };
    if !v.alpha_injective.is_proven() {
        return Err(Error::InvalidMonad("alpha is not certified injective".into()));
    }
    if n < 2 {
        return Err(Error::DimensionTooSmall { required: 2, found: n });
    }
    let module = if window.is_everywhere() {
        Threshold::NONE
    } else {
        Threshold {
            start: Some(window.start),
            kind: CertificateKind::Module,
            width: window.width,
        }
    };
    let below_top = top_threshold(w, m.a().min());
    let mut out = vec![Threshold::NONE; n + 1];
    out[n] = top_threshold(w, m.b().min());
    if n == 2 {
        out[1] = module.join(below_top);
    } else {
        out[1] = module;
        out[n - 1] = below_top;
    }
    Ok(out)
}

/// `T_i` for `i = 0..=n` (entry 0 unused).
fn thresholds(e: &SheafExpr, settings: &Settings) -> Result<Vec<Threshold>> {
    let w = e.weights();
    let n = w.dim();
    let mut out = vec![Threshold::NONE; n + 1];
    if n == 0 {
        return Ok(out);
    }
    for leaf in e.leaves() {
        let leaf_t = match &leaf {
            Leaf::Split(b) => {
                let mut t = vec![Threshold::NONE; n + 1];
                t[n] = top_threshold(w, b.min());
                t
            }
            Leaf::Monad(m) => monad_thresholds(m, settings)?,
        };
        for (acc, t) in out.iter_mut().zip(leaf_t) {
            *acc = acc.join(t);
        }
    }
    Ok(out)
}

/// Full cohomology vectors, cached across the degrees of one decision.
struct Cache<'a> {
    e: &'a SheafExpr,
    seen: HashMap<i64, Vec<BigUint>>,
}

impl<'a> Cache<'a> {
    fn new(e: &'a SheafExpr) -> Self {
        Cache {
            e,
            seen: HashMap::new(),
        }
    }

    fn h(&mut self, i: usize, t: i64) -> Result<BigUint> {
        if let Some(v) = self.seen.get(&t) {
            return Ok(v[i].clone());
        }
        let v = cohom(self.e, t)?;
        let out = v[i].clone();
        self.seen.insert(t, v);
        Ok(out)
    }
}

/// `h^i(e(s)) = 0` for all `s ≥ base`, certified. Returns the first failing twist if any.
fn vanishes_from(
    cache: &mut Cache<'_>,
    i: usize,
    base: i64,
    threshold: Threshold,
) -> Result<(Option<Witness>, WindowCertificate)> {
    let cert = WindowCertificate {
        i,
        kind: threshold.kind,
        from: base,
        start: threshold.start.map(|s| s.max(base)),
        width: threshold.width,
    };
    if let Some(end) = threshold.start {
        for s in base..end {
            let value = cache.h(i, s)?;
            if !value.is_zero() {
                return Ok((Some(Witness { i, twist: s, value }), cert));
            }
        }
    }
    Ok((None, cert))
}

fn semiwregular_with(
    e: &SheafExpr,
    m: i64,
    thresholds: &[Threshold],
    cache: &mut Cache<'_>,
) -> Result<RegularityReport> {
    let w = e.weights();
    let k = w.k();
    let mut witnesses = Vec::new();
    let mut windows = Vec::new();
    for (i, &threshold) in thresholds.iter().enumerate().take(w.dim() + 1).skip(1) {
        let base = (m + 1) * k - w.partial_sum(i);
        let (witness, cert) = vanishes_from(cache, i, base, threshold)?;
        witnesses.extend(witness);
        windows.push(cert);
    }
    Ok(RegularityReport {
        kind: RegularityKind::Semiwregular,
        m,
        verdict: witnesses.is_empty(),
        witnesses,
        windows,
        h0: None,
    })
}

/// `h^i(e(t + (m+1)k - w̄_i)) = 0` for `i = 1..n` and every `t ≥ 0`.
pub fn is_semiwregular(e: &SheafExpr, m: i64, settings: &Settings) -> Result<RegularityReport> {
    let th = thresholds(e, settings)?;
    semiwregular_with(e, m, &th, &mut Cache::new(e))
}

fn wregular_with(
    e: &SheafExpr,
    m: i64,
    thresholds: &[Threshold],
    cache: &mut Cache<'_>,
) -> Result<RegularityReport> {
    let mut report = semiwregular_with(e, m, thresholds, cache)?;
    let twist = (m + 1) * e.weights().k();
    let value = cache.h(0, twist)?;
    let h0 = Witness { i: 0, twist, value };
    if h0.value.is_zero() {
        report.witnesses.push(h0.clone());
    }
    report.kind = RegularityKind::Wregular;
    report.verdict = report.witnesses.is_empty();
    report.h0 = Some(h0);
    Ok(report)
}

/// Semiwregular and `h⁰(e((m+1)k)) ≠ 0`.
pub fn is_wregular(e: &SheafExpr, m: i64, settings: &Settings) -> Result<RegularityReport> {
    let th = thresholds(e, settings)?;
    wregular_with(e, m, &th, &mut Cache::new(e))
}

/// Largest twist of a summand that can carry sections.
fn top_section_degree(e: &SheafExpr) -> Option<i64> {
    e.leaves()
        .iter()
        .filter_map(|leaf| match leaf {
            Leaf::Split(b) => b.max(),
            Leaf::Monad(m) => m.b().max(),
        })
        .max()
}

/// The least `m` at which `e` is wregular.
pub fn wreg_min(e: &SheafExpr, settings: &Settings) -> Result<i64> {
    let w = e.weights();
    if w.dim() == 0 {
        // on a point every twist is wregular, so there is no least one
        return Err(Error::DimensionTooSmall { required: 1, found: 0 });
    }
    let k = w.k();
    let th = thresholds(e, settings)?;
    let mut cache = Cache::new(e);
    let Some(top) = top_section_degree(e) else {
        return Err(Error::NoWregularTwist(0));
    };
    // (m+1)k ≥ -top is necessary for sections
    let mut seed = Integer::div_ceil(&-top, &k) - 1;
    for (i, t) in th.iter().enumerate().skip(1) {
        if let Some(start) = t.start {
            seed = seed.max(Integer::div_ceil(&(start + w.partial_sum(i)), &k) - 1);
        }
    }
    let first = seed;
    while cache.h(0, (seed + 1) * k)?.is_zero() {
        seed += 1;
        if seed - first > H0_SEARCH_CAP {
            return Err(Error::NoWregularTwist(first));
        }
    }
    if !wregular_with(e, seed, &th, &mut cache)?.verdict {
        return Err(Error::NoWregularTwist(seed));
    }
    let mut m = seed;
    loop {
        if seed - m >= DECREMENT_CAP {
            return Err(Error::SearchCap {
                what: "minimal wregular twist".into(),
                steps: DECREMENT_CAP,
            });
        }
        if !wregular_with(e, m - 1, &th, &mut cache)?.verdict {
            return Ok(m);
        }
        m -= 1;
    }
}

/// `h^i(e(m - ik)) = 0` for `i = 1..n`.
pub fn is_toric_regular(e: &SheafExpr, m: i64) -> Result<RegularityReport> {
    let w = e.weights();
    let mut witnesses = Vec::new();
    let mut windows = Vec::new();
    for i in 1..=w.dim() {
        let twist = m - i as i64 * w.k();
        let value = cohom_degree(e, i, twist)?;
        if !value.is_zero() {
            witnesses.push(Witness { i, twist, value });
        }
        windows.push(WindowCertificate {
            i,
            kind: CertificateKind::Explicit,
            from: twist,
            start: None,
            width: 1,
        });
    }
    Ok(RegularityReport {
        kind: RegularityKind::Toric,
        m,
        verdict: witnesses.is_empty(),
        witnesses,
        windows,
        h0: None,
    })
}

/// `h^i(e(m - i)) = 0` for `i = 1..n`, treating `e` as a sheaf on `P^n` regardless of weights.
fn castelnuovo_mumford_report(
    e: &SheafExpr,
    m: i64,
    cache: &mut Cache<'_>,
) -> Result<RegularityReport> {
    let mut witnesses = Vec::new();
    let mut windows = Vec::new();
    for i in 1..=e.weights().dim() {
        let twist = m - i as i64;
        let value = cache.h(i, twist)?;
        if !value.is_zero() {
            witnesses.push(Witness { i, twist, value });
        }
        windows.push(WindowCertificate {
            i,
            kind: CertificateKind::Explicit,
            from: twist,
            start: None,
            width: 1,
        });
    }
    Ok(RegularityReport {
        kind: RegularityKind::Classic,
        m,
        verdict: witnesses.is_empty(),
        witnesses,
        windows,
        h0: None,
    })
}

/// Least `m` with `h^i(e(m - i)) = 0` for all `i ≥ 1`, using that regularity persists upward.
fn castelnuovo_mumford(e: &SheafExpr, settings: &Settings) -> Result<i64> {
    let n = e.weights().dim();
    if n == 0 {
        return Err(Error::DimensionTooSmall { required: 1, found: 0 });
    }
    let th = thresholds(e, settings)?;
    let seed = th
        .iter()
        .enumerate()
        .skip(1)
        .filter_map(|(i, t)| t.start.map(|s| s + i as i64))
        .max()
        .ok_or_else(|| Error::SearchCap {
            what: "regularity of a sheaf without top cohomology".into(),
            steps: 0,
        })?;
    let mut cache = Cache::new(e);
    let mut m = seed;
    while castelnuovo_mumford_report(e, m - 1, &mut cache)?.verdict {
        m -= 1;
        if seed - m > CLASSIC_SEARCH_CAP {
            return Err(Error::SearchCap {
                what: "classical regularity".into(),
                steps: CLASSIC_SEARCH_CAP,
            });
        }
    }
    Ok(m)
}

/// Castelnuovo-Mumford regularity on unweighted projective space.
pub fn classic_regularity(e: &SheafExpr, settings: &Settings) -> Result<i64> {
    if !e.weights().is_unweighted() {
        return Err(Error::WrongWeights);
    }
    castelnuovo_mumford(e, settings)
}

/// Classical `m`-regularity report on unweighted projective space.
pub fn is_classic_regular(e: &SheafExpr, m: i64) -> Result<RegularityReport> {
    if !e.weights().is_unweighted() {
        return Err(Error::WrongWeights);
    }
    castelnuovo_mumford_report(e, m, &mut Cache::new(e))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PullbackReport {
    pub m: i64,
    /// `(m+1)k - n + w̄ - w̄_1`.
    pub bound: i64,
    /// Regularity of the pull-back to `P^n`.
    pub actual: i64,
    pub holds: bool,
    /// Whether the hypothesis of the bound was met.
    pub semiwregular: bool,
}

/// Compares the regularity of the pull-back of `e` along `P^n → P(w)` with the bound
/// predicted from `m`-semiwregularity.
pub fn pullback_reg_report(e: &SheafExpr, m: i64, settings: &Settings) -> Result<PullbackReport> {
    let w = e.weights();
    let n = w.dim();
    if n == 0 {
        return Err(Error::DimensionTooSmall { required: 1, found: 0 });
    }
    let semiwregular = is_semiwregular(e, m, settings)?.verdict;
    let bound = (m + 1) * w.k() - n as i64 + w.total() - w.partial_sum(1);
    let actual = castelnuovo_mumford(&pullback_expand(e), settings)?;
    Ok(PullbackReport {
        m,
        bound,
        actual,
        holds: actual <= bound,
        semiwregular,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictionReport {
    pub j: usize,
    pub k_j: i64,
    pub z_j: i64,
    pub target_m: i64,
    /// `(m+1)z_j - 1`-semiwregularity of the restriction.
    pub verdict: bool,
    /// Whether the restriction is also wregular at the target.
    pub wregular: bool,
    /// Whether `e` itself is `m`-semiwregular.
    pub source_semiwregular: bool,
}

pub fn restrict_semiwreg_report(
    e: &SheafExpr,
    j: usize,
    m: i64,
    settings: &Settings,
) -> Result<RestrictionReport> {
    let source_semiwregular = is_semiwregular(e, m, settings)?.verdict;
    let r = e.restrict(j, settings)?;
    let target_m = (m + 1) * r.z_j - 1;
    let th = thresholds(&r.sheaf, settings)?;
    let mut cache = Cache::new(&r.sheaf);
    let verdict = semiwregular_with(&r.sheaf, target_m, &th, &mut cache)?.verdict;
    let wregular = wregular_with(&r.sheaf, target_m, &th, &mut cache)?.verdict;
    Ok(RestrictionReport {
        j,
        k_j: r.k_j,
        z_j: r.z_j,
        target_m,
        verdict,
        wregular,
        source_semiwregular,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonadBound {
    pub k: i64,
    /// `(n-1)c_t - (b_1 + ... + b_{t+n}) - (w̄ - w̄_1) + 1 + c`, when `C` is nonzero and `B`
    /// has at least `t + n` summands.
    pub syzygy_term: Option<i64>,
    /// `-b_1 + 1`.
    pub b_term: i64,
    /// `-a_1 + 1`, when `A` is nonzero.
    pub a_term: Option<i64>,
    pub rhs: i64,
    pub m: i64,
    #[serde(serialize_with = "bignum::biguint")]
    pub h0: BigUint,
    /// `is_wregular(E, m)`, computed independently of the bound.
    pub wregular: bool,
}

/// Twist at which the homology of a monad is guaranteed wregular by its shape.
pub fn monad_bound(mo: &Monad, settings: &Settings) -> Result<MonadBound> {
    let w = mo.weights();
    let n = w.dim();
    if n < 3 {
        return Err(Error::DimensionTooSmall { required: 3, found: n });
    }
    let v = mo.validity();
    if !v.is_usable() {
        return Err(Error::InvalidMonad("monad conditions are not certified".into()));
    }
    let a = mo.a().sorted();
    let b = mo.b().sorted();
    let c = mo.c().sorted();
    let Some(&b1) = b.first() else {
        return Err(Error::InvalidMonad("middle term is zero".into()));
    };
    let t = c.len();
    let syzygy_term = (t > 0 && t + n <= b.len()).then(|| {
        let c_t = c[t - 1];
        let c_sum: i64 = c.iter().sum();
        let b_sum: i64 = b[..t + n].iter().sum();
        (n as i64 - 1) * c_t - b_sum - (w.total() - w.partial_sum(1)) + 1 + c_sum
    });
    let b_term = -b1 + 1;
    let a_term = a.first().map(|a1| -a1 + 1);
    let rhs = [syzygy_term, Some(b_term), a_term].into_iter().flatten().max().expect("b_term");
    let k = w.k();
    let e = SheafExpr::monad(mo.clone());
    let first = Integer::div_ceil(&rhs, &k) - 1;
    let mut m = first;
    let mut h0 = cohom_degree(&e, 0, (m + 1) * k)?;
    while h0.is_zero() {
        m += 1;
        if m - first > H0_SEARCH_CAP {
            return Err(Error::NoWregularTwist(first));
        }
        h0 = cohom_degree(&e, 0, (m + 1) * k)?;
    }
    let wregular = is_wregular(&e, m, settings)?.verdict;
    Ok(MonadBound {
        k,
        syzygy_term,
        b_term,
        a_term,
        rhs,
        m,
        h0,
        wregular,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn split(w: &[i64], twists: &[i64]) -> SheafExpr {
        SheafExpr::split(Weights::new(w).unwrap(), twists.to_vec())
    }

    fn s() -> Settings {
        Settings::default()
    }

    #[test]
    fn weighted_line_examples() {
        let om5 = split(&[3, 2], &[-5]);
        assert!(is_semiwregular(&om5, 0, &s()).unwrap().verdict);
        let w = is_wregular(&om5, 0, &s()).unwrap();
        assert!(!w.verdict);
        assert_eq!(w.witnesses, vec![Witness { i: 0, twist: 6, value: BigUint::zero() }]);
        let neg = is_semiwregular(&om5, -1, &s()).unwrap();
        assert!(!neg.verdict);
        assert_eq!(neg.witnesses, vec![Witness { i: 1, twist: -5, value: BigUint::from(1u8) }]);
        assert!(is_wregular(&split(&[3, 2], &[-4]), 0, &s()).unwrap().verdict);
        assert!(is_wregular(&split(&[3, 2, 1], &[-5]), 0, &s()).unwrap().verdict);
    }

    #[test]
    fn minimal_wregularity() {
        for w in [&[1i64, 1][..], &[3, 2], &[5, 3, 2], &[3, 2, 2, 1], &[1, 1, 1]] {
            assert_eq!(wreg_min(&split(w, &[0]), &s()).unwrap(), 0, "{w:?}");
        }
        assert_eq!(wreg_min(&split(&[3, 2], &[-4]), &s()).unwrap(), 0);
        assert_eq!(wreg_min(&split(&[3, 2], &[-5]), &s()).unwrap(), 1);
        assert_eq!(wreg_min(&split(&[1, 1, 1], &[-1, -1]), &s()).unwrap(), 1);
    }

    #[test]
    fn toric_examples() {
        assert!(is_toric_regular(&split(&[3, 2, 1], &[12]), 0).unwrap().verdict);
        let r = is_toric_regular(&split(&[3, 2, 1], &[0]), 0).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.witnesses.len(), 1);
        assert_eq!((r.witnesses[0].i, r.witnesses[0].twist), (2, -12));
        assert_eq!(r.witnesses[0].value, crate::monomials::denumerant(&Weights::new(&[3, 2, 1]).unwrap(), 6));
        assert!(is_toric_regular(&split(&[1, 1], &[0]), 0).unwrap().verdict);
    }

    #[test]
    fn classical_examples() {
        assert_eq!(classic_regularity(&split(&[1, 1], &[0]), &s()).unwrap(), 0);
        assert_eq!(classic_regularity(&split(&[1, 1], &[-3, 0]), &s()).unwrap(), 3);
        assert_eq!(classic_regularity(&split(&[1, 1, 1], &[-1]), &s()).unwrap(), 1);
        assert_eq!(classic_regularity(&split(&[1, 1, 1, 1], &[2, -4, 0]), &s()).unwrap(), 4);
        assert!(matches!(
            classic_regularity(&split(&[3, 2], &[0]), &s()),
            Err(Error::WrongWeights)
        ));
    }

    #[test]
    fn pullback_examples() {
        let r = pullback_reg_report(&split(&[3, 2], &[0]), 0, &s()).unwrap();
        assert_eq!((r.bound, r.actual, r.holds), (5, 0, true));
        let r = pullback_reg_report(&split(&[2, 1], &[0]), 0, &s()).unwrap();
        assert_eq!(r.bound, 1);
        assert!(r.holds);
        let r = pullback_reg_report(&split(&[1, 1], &[0, 1]), 0, &s()).unwrap();
        assert!(r.semiwregular);
        assert_eq!((r.bound, r.actual), (0, 0));
        assert!(matches!(
            pullback_reg_report(&split(&[2], &[0]), 0, &s()),
            Err(Error::DimensionTooSmall { .. })
        ));
    }

    #[test]
    fn restriction_examples() {
        let r = restrict_semiwreg_report(&split(&[3, 2, 1], &[-5]), 2, 0, &s()).unwrap();
        assert_eq!((r.z_j, r.k_j, r.target_m, r.verdict, r.wregular), (1, 6, 0, true, false));
        let r = restrict_semiwreg_report(&split(&[1, 1, 1], &[0]), 0, 0, &s()).unwrap();
        assert_eq!((r.z_j, r.target_m, r.verdict), (1, 0, true));
        let r = restrict_semiwreg_report(&split(&[3, 2, 2, 1], &[0]), 0, 0, &s()).unwrap();
        assert_eq!((r.k_j, r.z_j, r.target_m, r.verdict), (2, 3, 2, true));
    }

    #[test]
    fn true_verdicts_carry_windows() {
        let e = split(&[5, 3, 2], &[-7, 3]);
        for m in -2..4 {
            let r = is_wregular(&e, m, &s()).unwrap();
            assert_eq!(r.verdict, r.witnesses.is_empty());
            assert_eq!(r.windows.len(), 2);
        }
    }
}
