//! JSON documents describing a weighted projective space and a sheaf on it.
//!
//! ```json
//! {"weights": [3, 2], "sheaf": {"type": "split", "twists": [-5]}}
//! ```
//!
//! Expressions are `split {twists}`, `monad {A, B, C, alpha, beta}`, `twist {of, by}` and
//! `sum {of}`. Matrix entries are polynomials in the text form of [`Polynomial`], rows index
//! target summands and columns source summands.

use serde::{Deserialize, Serialize};

use crate::poly::Polynomial;
use crate::sheaf::{GradedMatrix, Monad, SheafExpr, SheafNode, SplitBundle};
use crate::{Error, Result, Settings, Weights};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SheafDocument {
    pub weights: Vec<i64>,
    pub sheaf: ExprDocument,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum ExprDocument {
    Split {
        twists: Vec<i64>,
    },
    Monad {
        #[serde(rename = "A")]
        a: Vec<i64>,
        #[serde(rename = "B")]
        b: Vec<i64>,
        #[serde(rename = "C")]
        c: Vec<i64>,
        alpha: Vec<Vec<String>>,
        beta: Vec<Vec<String>>,
    },
    Twist {
        of: Box<ExprDocument>,
        by: i64,
    },
    Sum {
        of: Vec<ExprDocument>,
    },
}

impl SheafDocument {
    pub fn parse(text: &str) -> Result<SheafDocument> {
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    /// Builds and validates the sheaf; monads are checked with `settings`.
    pub fn to_expr(&self, settings: &Settings) -> Result<SheafExpr> {
        let w = Weights::new(&self.weights)?;
        let node = build(&w, &self.sheaf, settings)?;
        SheafExpr::new(w, node)
    }

    pub fn from_expr(e: &SheafExpr) -> SheafDocument {
        SheafDocument {
            weights: e.weights().as_slice().to_vec(),
            sheaf: describe(e.node()),
        }
    }
}

fn matrix(
    w: &Weights,
    name: &str,
    source: &SplitBundle,
    target: &SplitBundle,
    rows: &[Vec<String>],
) -> Result<GradedMatrix> {
    let entries = rows
        .iter()
        .enumerate()
        .map(|(r, row)| {
            row.iter()
                .enumerate()
                .map(|(c, text)| {
                    Polynomial::parse(text, w.num_vars()).map_err(|e| match e {
                        Error::Parse { pos, msg } => Error::Parse {
                            pos,
                            msg: format!("{msg} in {name}[{r}][{c}] = {text:?}"),
                        },
                        other => other,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    GradedMatrix::new(w.clone(), source.clone(), target.clone(), entries).map_err(|e| match e {
        Error::Shape(msg) => Error::Shape(format!("{name}: {msg}")),
        other => other,
    })
}

fn build(w: &Weights, doc: &ExprDocument, settings: &Settings) -> Result<SheafNode> {
    Ok(match doc {
        ExprDocument::Split { twists } => SheafNode::Split(SplitBundle::new(twists.clone())),
        ExprDocument::Monad { a, b, c, alpha, beta } => {
            let (a, b, c) = (
                SplitBundle::new(a.clone()),
                SplitBundle::new(b.clone()),
                SplitBundle::new(c.clone()),
            );
            let alpha = matrix(w, "alpha", &a, &b, alpha)?;
            let beta = matrix(w, "beta", &b, &c, beta)?;
            SheafNode::MonadHomology(Box::new(Monad::new(alpha, beta, settings)?))
        }
        ExprDocument::Twist { of, by } => SheafNode::Twist(Box::new(build(w, of, settings)?), *by),
        ExprDocument::Sum { of } => {
            if of.is_empty() {
                return Err(Error::Document("a sum needs at least one summand".into()));
            }
            SheafNode::Sum(of.iter().map(|d| build(w, d, settings)).collect::<Result<_>>()?)
        }
    })
}

fn text_rows(m: &GradedMatrix) -> Vec<Vec<String>> {
    m.entries()
        .iter()
        .map(|row| row.iter().map(ToString::to_string).collect())
        .collect()
}

fn describe(node: &SheafNode) -> ExprDocument {
    match node {
        SheafNode::Split(b) => ExprDocument::Split {
            twists: b.twists().to_vec(),
        },
        SheafNode::MonadHomology(m) => ExprDocument::Monad {
            a: m.a().twists().to_vec(),
            b: m.b().twists().to_vec(),
            c: m.c().twists().to_vec(),
            alpha: text_rows(m.alpha()),
            beta: text_rows(m.beta()),
        },
        SheafNode::Twist(inner, by) => ExprDocument::Twist {
            of: Box::new(describe(inner)),
            by: *by,
        },
        SheafNode::Sum(parts) => ExprDocument::Sum {
            of: parts.iter().map(describe).collect(),
        },
    }
}
