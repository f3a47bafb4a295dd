use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{certify_cokernel_vanishes, complete_intersection_cap, GradedMatrix, SplitBundle, Window};
use crate::{Error, Result, Settings, Weights};

const INJECTIVITY_ATTEMPTS: usize = 10;
const POINT_RANGE: i64 = 1000;

/// Whether a property was established or merely not refuted within the search limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Certification {
    Proven,
    Unverified,
}

impl Certification {
    pub fn is_proven(self) -> bool {
        self == Certification::Proven
    }

    fn from_window(w: Option<Window>) -> Self {
        if w.is_some() {
            Certification::Proven
        } else {
            Certification::Unverified
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidityReport {
    /// Always true on a constructed monad; a nonzero composite is rejected outright.
    pub composition_zero: bool,
    pub alpha_injective: Certification,
    pub beta_surjective: Certification,
    pub pointwise_bundle: Certification,
    pub minimal: bool,
    /// Point at which `alpha` has full column rank.
    pub injectivity_point: Option<Vec<i64>>,
    /// Vanishing window of `coker H⁰_*(beta)`.
    pub beta_window: Option<Window>,
    /// Vanishing window of `coker H⁰_*(alpha^T)`.
    pub bundle_window: Option<Window>,
}

impl ValidityReport {
    /// Enough to compute cohomology of the homology sheaf.
    pub fn is_usable(&self) -> bool {
        self.alpha_injective.is_proven() && self.beta_surjective.is_proven()
    }

    fn shifted(&self, s: i64) -> ValidityReport {
        ValidityReport {
            beta_window: self.beta_window.map(|w| w.shifted(-s)),
            bundle_window: self.bundle_window.map(|w| w.shifted(s)),
            ..self.clone()
        }
    }
}

/// A complex `A --alpha--> B --beta--> C` of split bundles; its sheaf is `ker beta / im alpha`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monad {
    alpha: GradedMatrix,
    beta: GradedMatrix,
    validity: ValidityReport,
}

impl Monad {
    pub fn new(alpha: GradedMatrix, beta: GradedMatrix, settings: &Settings) -> Result<Monad> {
        let validity = validate_monad(&alpha, &beta, settings)?;
        Ok(Monad {
            alpha,
            beta,
            validity,
        })
    }

    pub fn weights(&self) -> &Weights {
        self.beta.weights()
    }

    pub fn a(&self) -> &SplitBundle {
        self.alpha.source()
    }

    pub fn b(&self) -> &SplitBundle {
        self.beta.source()
    }

    pub fn c(&self) -> &SplitBundle {
        self.beta.target()
    }

    pub fn alpha(&self) -> &GradedMatrix {
        &self.alpha
    }

    pub fn beta(&self) -> &GradedMatrix {
        &self.beta
    }

    pub fn validity(&self) -> &ValidityReport {
        &self.validity
    }

    pub fn rank(&self) -> i64 {
        self.b().rank() as i64 - self.a().rank() as i64 - self.c().rank() as i64
    }

    pub fn twisted(&self, s: i64) -> Monad {
        Monad {
            alpha: self.alpha.twisted(s),
            beta: self.beta.twisted(s),
            validity: self.validity.shifted(s),
        }
    }

    /// `C^∨ --beta^T--> B^∨ --alpha^T--> A^∨`.
    pub fn dual(&self, settings: &Settings) -> Monad {
        let alpha = self.beta.transpose();
        let beta = self.alpha.transpose();
        let point = injectivity_point(&alpha, settings);
        let v = &self.validity;
        let validity = ValidityReport {
            composition_zero: true,
            alpha_injective: if point.is_some() {
                Certification::Proven
            } else {
                Certification::Unverified
            },
            beta_surjective: v.pointwise_bundle,
            pointwise_bundle: v.beta_surjective,
            minimal: v.minimal,
            injectivity_point: point,
            beta_window: v.bundle_window,
            bundle_window: v.beta_window,
        };
        Monad {
            alpha,
            beta,
            validity,
        }
    }

    /// Restriction to the hyperplane `x_j = 0`, re-validated there.
    pub fn restrict(&self, j: usize, settings: &Settings) -> Result<Monad> {
        let alpha = self.alpha.restrict(j)?;
        let beta = self.beta.restrict(j)?;
        let validity = validate_monad(&alpha, &beta, settings)?;
        if !validity.beta_surjective.is_proven() {
            return Err(Error::RestrictionNotMonad {
                index: j,
                reason: "beta is not surjective on the hyperplane".into(),
            });
        }
        if !validity.alpha_injective.is_proven() {
            return Err(Error::RestrictionNotMonad {
                index: j,
                reason: "alpha is not injective on the hyperplane".into(),
            });
        }
        Ok(Monad {
            alpha,
            beta,
            validity,
        })
    }
}

/// Checks the monad conditions. A nonzero composite is an error; the remaining properties are
/// reported with how firmly they were established.
pub fn validate_monad(
    alpha: &GradedMatrix,
    beta: &GradedMatrix,
    settings: &Settings,
) -> Result<ValidityReport> {
    if alpha.weights() != beta.weights() {
        return Err(Error::WeightsMismatch);
    }
    let composite = beta.compose(alpha)?;
    if !composite.is_zero() {
        return Err(Error::NotAComplex);
    }
    let w = alpha.weights();
    let twists = alpha
        .source()
        .twists()
        .iter()
        .chain(beta.source().twists())
        .chain(beta.target().twists())
        .copied()
        .collect::<Vec<_>>();
    let cap = settings.cap_for(w, twists);
    let point = injectivity_point(alpha, settings);
    let beta_window = certify_cokernel_vanishes(beta, cap);
    // a point where alpha drops rank makes this search run to its cap, so by default it stops
    // at the complete-intersection bound
    let alpha_t = alpha.transpose();
    let bundle_cap = settings
        .window_cap
        .unwrap_or_else(|| cap.min(complete_intersection_cap(&alpha_t)));
    let bundle_window = certify_cokernel_vanishes(&alpha_t, bundle_cap);
    Ok(ValidityReport {
        composition_zero: true,
        alpha_injective: if point.is_some() {
            Certification::Proven
        } else {
            Certification::Unverified
        },
        beta_surjective: Certification::from_window(beta_window),
        pointwise_bundle: Certification::from_window(bundle_window),
        minimal: alpha.is_minimal() && beta.is_minimal(),
        injectivity_point: point,
        beta_window,
        bundle_window,
    })
}

/// A point where `map` has full column rank. Rank can only drop under evaluation, so one such
/// point shows the map of sheaves is injective.
fn injectivity_point(map: &GradedMatrix, settings: &Settings) -> Option<Vec<i64>> {
    let nvars = map.weights().num_vars();
    if map.source().is_empty() {
        return Some(vec![0; nvars]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    (0..INJECTIVITY_ATTEMPTS).find_map(|_| {
        let point: Vec<i64> = (0..nvars).map(|_| rng.gen_range(1..=POINT_RANGE)).collect();
        let q: Vec<BigRational> = point.iter().map(|&x| BigRational::from_integer(x.into())).collect();
        (map.evaluate(&q).rank_exact() == map.source().rank()).then_some(point)
    })
}
