//! Degreewise verification reports shared by the identity and decomposition
//! checks.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::Scalar;
use crate::poly::GradedPiece;

/// Whether the input satisfies the hypotheses of the statement being checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypothesis {
    Satisfied,
    Violated,
    NotRequired,
}

/// Where a degree bound came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSource {
    /// `max generator degree + n + 2`.
    Default,
    /// Supplied by the caller.
    User,
}

/// Outcome of comparing two families of graded pieces in degrees `0..=D`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCheck {
    pub holds: bool,
    pub hypothesis: Hypothesis,
    pub degree_bound: usize,
    /// Smallest degree where the relation failed.
    pub first_failure: Option<usize>,
    /// `(degree, dim lhs, dim rhs)` for every checked degree.
    pub dims: Vec<(usize, usize, usize)>,
}

impl DegreeCheck {
    /// A check is only a counterexample when the hypotheses hold.
    pub fn is_counterexample(&self) -> bool {
        !self.holds && self.hypothesis != Hypothesis::Violated
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Equal,
    Contained,
}

/// Compares `lhs(d)` against `rhs(d)` for `d = 0..=bound`.
pub fn compare_degreewise<F: Scalar>(
    bound: usize,
    relation: Relation,
    hypothesis: Hypothesis,
    mut lhs: impl FnMut(usize) -> Result<GradedPiece<F>>,
    mut rhs: impl FnMut(usize) -> Result<GradedPiece<F>>,
) -> Result<DegreeCheck> {
    let mut first_failure = None;
    let mut dims = Vec::with_capacity(bound + 1);
    for d in 0..=bound {
        let l = lhs(d)?;
        let r = rhs(d)?;
        let ok = match relation {
            Relation::Equal => l == r,
            Relation::Contained => l.leq(&r)?,
        };
        dims.push((d, l.dim(), r.dim()));
        if !ok && first_failure.is_none() {
            first_failure = Some(d);
        }
    }
    Ok(DegreeCheck { holds: first_failure.is_none(), hypothesis, degree_bound: bound, first_failure, dims })
}

/// `max generator degree + n + 2` for a ring with `nvars = n + 1` variables.
pub fn default_degree_bound(max_gen_degree: usize, nvars: usize) -> usize {
    max_gen_degree + nvars + 1
}
