//! Inequality evaluation reports shared by the classical, ternary, and
//! operator layers.

use serde::{Deserialize, Serialize};

/// A margin below `-VIOLATION_TOLERANCE` counts as a violation; anything in
/// `[-1e-12, 0)` is attributed to rounding.
pub const VIOLATION_TOLERANCE: f64 = 1e-12;

/// Outcome of evaluating one inequality on one distribution.
///
/// `margin` is the slack in the satisfied direction: for a `lhs >= bound`
/// inequality it is `lhs - bound`, for a `|value| <= bound` inequality it is
/// `bound - |value|`. Negative margin means the inequality failed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub name: String,
    pub lhs: f64,
    pub bound: f64,
    pub margin: f64,
    pub violated: bool,
    /// Human-readable pointer at whatever produced the number (a proposition
    /// triple, a point mass, a strategy), when one is worth recording.
    pub witness: Option<String>,
}

impl InequalityReport {
    /// Report for an inequality of the form `lhs >= bound`.
    pub fn lower_bounded(name: impl Into<String>, lhs: f64, bound: f64) -> Self {
        let margin = lhs - bound;
        InequalityReport {
            name: name.into(),
            lhs,
            bound,
            margin,
            violated: margin < -VIOLATION_TOLERANCE,
            witness: None,
        }
    }

    /// Report for an inequality of the form `|value| <= bound`.
    pub fn upper_bounded_abs(name: impl Into<String>, value: f64, bound: f64) -> Self {
        let margin = bound - value.abs();
        InequalityReport {
            name: name.into(),
            lhs: value,
            bound,
            margin,
            violated: margin < -VIOLATION_TOLERANCE,
            witness: None,
        }
    }

    pub fn with_witness(mut self, witness: impl Into<String>) -> Self {
        self.witness = Some(witness.into());
        self
    }
}

/// The two starred inequalities that admit violations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StarInequality {
    /// Starred Wigner-d'Espagnat over a triple of propositions. Violation is
    /// a negative margin of `[a ^ b] + [!b ^ c] - [a ^ c]`; the extreme is
    /// margin `-1`.
    WdStar,
    /// Post-selected CHSH over two settings per side. Violation exceeds the
    /// deterministic bound 2; the extreme is 4.
    ChshStar,
}

impl StarInequality {
    /// Number of propositions an evaluation context must carry.
    pub fn required_arity(self) -> RequiredArity {
        match self {
            StarInequality::WdStar => RequiredArity::AtLeast(3),
            StarInequality::ChshStar => RequiredArity::Exactly(4),
        }
    }
}

impl std::fmt::Display for StarInequality {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StarInequality::WdStar => write!(f, "wigner-despagnat-star"),
            StarInequality::ChshStar => write!(f, "chsh-star"),
        }
    }
}

/// Arity demanded by an inequality, checked before evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RequiredArity {
    Exactly(usize),
    AtLeast(usize),
}

impl RequiredArity {
    pub fn accepts(self, n: usize) -> bool {
        match self {
            RequiredArity::Exactly(k) => n == k,
            RequiredArity::AtLeast(k) => n >= k,
        }
    }
}

impl std::fmt::Display for RequiredArity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RequiredArity::Exactly(k) => write!(f, "exactly {k}"),
            RequiredArity::AtLeast(k) => write!(f, "at least {k}"),
        }
    }
}
