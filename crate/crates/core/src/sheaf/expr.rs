use std::collections::BTreeMap;
use std::fmt;

use super::{Monad, SplitBundle};
use crate::{Error, Result, Settings, Weights};

/// Syntax tree of a sheaf. Twists distribute over sums, so every tree flattens to a list of
/// [`Leaf`]s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SheafNode {
    Split(SplitBundle),
    MonadHomology(Box<Monad>),
    Twist(Box<SheafNode>, i64),
    Sum(Vec<SheafNode>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Leaf {
    Split(SplitBundle),
    Monad(Monad),
}

impl Leaf {
    pub fn twisted(&self, s: i64) -> Leaf {
        match self {
            Leaf::Split(b) => Leaf::Split(b.twisted(s)),
            Leaf::Monad(m) => Leaf::Monad(m.twisted(s)),
        }
    }
}

/// A sheaf on a fixed weighted projective space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheafExpr {
    weights: Weights,
    node: SheafNode,
}

/// Restriction to a coordinate hyperplane together with its weight data.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub sheaf: SheafExpr,
    /// lcm of the hyperplane's weights.
    pub k_j: i64,
    /// `k / k_j`.
    pub z_j: i64,
}

impl SheafExpr {
    /// Checks that every monad in `node` lives over `weights`.
    pub fn new(weights: Weights, node: SheafNode) -> Result<SheafExpr> {
        fn check(w: &Weights, node: &SheafNode) -> Result<()> {
            match node {
                SheafNode::Split(_) => Ok(()),
                SheafNode::MonadHomology(m) if m.weights() != w => Err(Error::WeightsMismatch),
                SheafNode::MonadHomology(_) => Ok(()),
                SheafNode::Twist(inner, _) => check(w, inner),
                SheafNode::Sum(parts) => parts.iter().try_for_each(|p| check(w, p)),
            }
        }
        check(&weights, &node)?;
        Ok(SheafExpr { weights, node })
    }

    pub fn split(weights: Weights, twists: Vec<i64>) -> SheafExpr {
        SheafExpr {
            weights,
            node: SheafNode::Split(SplitBundle::new(twists)),
        }
    }

    pub fn monad(monad: Monad) -> SheafExpr {
        SheafExpr {
            weights: monad.weights().clone(),
            node: SheafNode::MonadHomology(Box::new(monad)),
        }
    }

    pub fn twist(&self, s: i64) -> SheafExpr {
        SheafExpr {
            weights: self.weights.clone(),
            node: SheafNode::Twist(Box::new(self.node.clone()), s),
        }
    }

    pub fn sum(parts: Vec<SheafExpr>) -> Result<SheafExpr> {
        let Some(first) = parts.first() else {
            return Err(Error::Document("a sum needs at least one summand".into()));
        };
        let weights = first.weights.clone();
        if parts.iter().any(|p| p.weights != weights) {
            return Err(Error::WeightsMismatch);
        }
        Ok(SheafExpr {
            weights,
            node: SheafNode::Sum(parts.into_iter().map(|p| p.node).collect()),
        })
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    pub fn node(&self) -> &SheafNode {
        &self.node
    }

    /// Flattened summands with all twists pushed into them.
    pub fn leaves(&self) -> Vec<Leaf> {
        fn walk(node: &SheafNode, shift: i64, out: &mut Vec<Leaf>) {
            match node {
                SheafNode::Split(b) => out.push(Leaf::Split(b.twisted(shift))),
                SheafNode::MonadHomology(m) => out.push(Leaf::Monad(m.twisted(shift))),
                SheafNode::Twist(inner, s) => walk(inner, shift + s, out),
                SheafNode::Sum(parts) => parts.iter().for_each(|p| walk(p, shift, out)),
            }
        }
        let mut out = Vec::new();
        walk(&self.node, 0, &mut out);
        out
    }

    /// All split summands merged, or `None` if a monad occurs.
    pub fn as_split(&self) -> Option<SplitBundle> {
        self.leaves()
            .into_iter()
            .try_fold(SplitBundle::default(), |acc, leaf| match leaf {
                Leaf::Split(b) => Some(acc.concat(&b)),
                Leaf::Monad(_) => None,
            })
    }

    pub fn dual(&self, settings: &Settings) -> SheafExpr {
        fn walk(node: &SheafNode, settings: &Settings) -> SheafNode {
            match node {
                SheafNode::Split(b) => SheafNode::Split(b.dual()),
                SheafNode::MonadHomology(m) => SheafNode::MonadHomology(Box::new(m.dual(settings))),
                SheafNode::Twist(inner, s) => SheafNode::Twist(Box::new(walk(inner, settings)), -s),
                SheafNode::Sum(parts) => SheafNode::Sum(parts.iter().map(|p| walk(p, settings)).collect()),
            }
        }
        SheafExpr {
            weights: self.weights.clone(),
            node: walk(&self.node, settings),
        }
    }

    /// `F ⊗ O_H` for the hyperplane `H = {x_j = 0}`.
    pub fn restrict(&self, j: usize, settings: &Settings) -> Result<Restriction> {
        fn walk(node: &SheafNode, j: usize, settings: &Settings) -> Result<SheafNode> {
            Ok(match node {
                SheafNode::Split(b) => SheafNode::Split(b.clone()),
                SheafNode::MonadHomology(m) => {
                    SheafNode::MonadHomology(Box::new(m.restrict(j, settings)?))
                }
                SheafNode::Twist(inner, s) => SheafNode::Twist(Box::new(walk(inner, j, settings)?), *s),
                SheafNode::Sum(parts) => SheafNode::Sum(
                    parts
                        .iter()
                        .map(|p| walk(p, j, settings))
                        .collect::<Result<_>>()?,
                ),
            })
        }
        let weights = self.weights.without(j)?;
        let k_j = weights.k();
        Ok(Restriction {
            sheaf: SheafExpr {
                node: walk(&self.node, j, settings)?,
                weights,
            },
            k_j,
            z_j: self.weights.k() / k_j,
        })
    }
}

impl fmt::Display for SheafExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn walk(node: &SheafNode, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match node {
                SheafNode::Split(b) => write!(f, "{b}"),
                SheafNode::MonadHomology(m) => write!(f, "H[{} -> {} -> {}]", m.a(), m.b(), m.c()),
                SheafNode::Twist(inner, s) => {
                    write!(f, "(")?;
                    walk(inner, f)?;
                    write!(f, ")({s})")
                }
                SheafNode::Sum(parts) => {
                    for (i, p) in parts.iter().enumerate() {
                        if i > 0 {
                            write!(f, " + ")?;
                        }
                        walk(p, f)?;
                    }
                    Ok(())
                }
            }
        }
        walk(&self.node, f)
    }
}

/// Multiplicities of the shifts `r̄ = Σ r_j` over tuples `0 ≤ r_j < w_j`. These describe the
/// push-forward of `O` along `P^n → P(w)`, `[x_i] ↦ [x_i^{w_i}]`, as `⊕ O(-r̄)`.
pub fn pullback_shifts(w: &Weights) -> BTreeMap<i64, u64> {
    let mut counts = BTreeMap::from([(0i64, 1u64)]);
    for &wj in w.as_slice() {
        let mut next = BTreeMap::new();
        for (&s, &c) in &counts {
            for r in 0..wj {
                *next.entry(s + r).or_insert(0) += c;
            }
        }
        counts = next;
    }
    counts
}

/// A sheaf on `P(w)` whose cohomology in each twist equals that of the pull-back of `e` to
/// `P^n`: the sum of `e(-r̄)` over the shifts of [`pullback_shifts`].
pub fn pullback_expand(e: &SheafExpr) -> SheafExpr {
    let shifts = pullback_shifts(e.weights());
    if shifts.len() == 1 && shifts.get(&0) == Some(&1) {
        return e.clone();
    }
    let parts = shifts
        .iter()
        .flat_map(|(&r, &mult)| std::iter::repeat_n(r, mult as usize))
        .map(|r| SheafNode::Twist(Box::new(e.node.clone()), -r))
        .collect();
    SheafExpr {
        weights: e.weights.clone(),
        node: SheafNode::Sum(parts),
    }
}
