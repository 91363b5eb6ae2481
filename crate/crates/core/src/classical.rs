//! Kolmogorov probability over a finite context of binary propositions.
//!
//! A context of `n` propositions has `2^n` joint truth assignments. A
//! [`JointDistribution`] holds one nonnegative weight per assignment in
//! lexicographic order: proposition 0 is the most significant digit and truth
//! is digit 0, so for two propositions the basis reads `TT, TF, FT, FF` and
//! `weights[1]` is the probability of "p and not q". [`index_of`] and
//! [`assignment_of`] convert between assignments and basis indices.
//!
//! Everything downstream is a sum over this vector: marginals restrict the
//! sum to matching assignments, conditionals divide two marginals, and the
//! classical Wigner-d'Espagnat inequality
//!
//! ```text
//! P(a & b) + P(!b & c) >= P(a & c)
//! ```
//!
//! holds for every distribution because each assignment that contributes to
//! the right side contributes to exactly one of the two left terms.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::report::InequalityReport;
use crate::sampling::simplex_weights;

/// Dense enumeration cap: `2^16` weights is the largest joint this module
/// will materialize.
pub const MAX_PROPOSITIONS: usize = 16;

/// Normalization drift accepted (and silently repaired) at intake.
pub const INTAKE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClassicalError {
    #[error("context of {n} propositions needs {expected} weights, got {got}")]
    WrongLength { n: usize, expected: usize, got: usize },
    #[error("{n} propositions exceed the dense-enumeration cap of {max}")]
    TooManyPropositions { n: usize, max: usize },
    #[error("weight at index {index} is not finite")]
    NonFiniteWeight { index: usize },
    #[error("weight at index {index} is negative ({value})")]
    NegativeWeight { index: usize, value: f64 },
    #[error("weights sum to {sum}, outside 1 \u{b1} {tolerance}")]
    NotNormalized { sum: f64, tolerance: f64 },
    #[error("proposition index {index} out of range for a context of {n}")]
    UnknownProposition { index: usize, n: usize },
    #[error("proposition index {index} referenced more than once")]
    DuplicateProposition { index: usize },
    #[error("conditioning event has probability zero")]
    ZeroConditioningMass,
    #[error("proposition name must be non-empty")]
    EmptyName,
    #[error("proposition name {name:?} appears more than once in the context")]
    DuplicateName { name: String },
}

/// A named proposition at a fixed basis position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Proposition {
    name: String,
    index: usize,
}

impl Proposition {
    pub fn new(name: impl Into<String>, index: usize) -> Result<Self, ClassicalError> {
        let name = name.into();
        if name.is_empty() {
            return Err(ClassicalError::EmptyName);
        }
        Ok(Proposition { name, index })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn index(&self) -> usize {
        self.index
    }

    /// Literal asserting this proposition takes the given truth value.
    pub fn literal(&self, value: bool) -> Literal {
        Literal { index: self.index, value }
    }
}

/// An ordered set of distinctly named propositions; index = position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Context {
    propositions: Vec<Proposition>,
}

impl Context {
    pub fn new<I, S>(names: I) -> Result<Self, ClassicalError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut propositions = Vec::new();
        for (index, name) in names.into_iter().enumerate() {
            let p = Proposition::new(name, index)?;
            if propositions.iter().any(|q: &Proposition| q.name == p.name) {
                return Err(ClassicalError::DuplicateName { name: p.name });
            }
            propositions.push(p);
        }
        Ok(Context { propositions })
    }

    pub fn len(&self) -> usize {
        self.propositions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.propositions.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&Proposition> {
        self.propositions.iter().find(|p| p.name == name)
    }

    pub fn propositions(&self) -> &[Proposition] {
        &self.propositions
    }

    /// Literal for the named proposition, if the context knows it.
    pub fn literal(&self, name: &str, value: bool) -> Option<Literal> {
        self.get(name).map(|p| p.literal(value))
    }
}

/// One proposition pinned to one truth value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Literal {
    pub index: usize,
    pub value: bool,
}

impl Literal {
    pub fn new(index: usize, value: bool) -> Self {
        Literal { index, value }
    }
}

impl From<(usize, bool)> for Literal {
    fn from((index, value): (usize, bool)) -> Self {
        Literal { index, value }
    }
}

/// Basis index of a full truth assignment (`assignment[0]` is proposition 0).
///
/// Truth is digit 0, so the all-true assignment is index 0 and the all-false
/// assignment is index `2^n - 1`.
pub fn index_of(assignment: &[bool]) -> usize {
    assignment
        .iter()
        .fold(0usize, |acc, &v| (acc << 1) | usize::from(!v))
}

/// Inverse of [`index_of`] for a context of `n` propositions.
pub fn assignment_of(index: usize, n: usize) -> Vec<bool> {
    (0..n).map(|i| (index >> (n - 1 - i)) & 1 == 0).collect()
}

/// Joint distribution over all `2^n` truth assignments of `n` propositions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDistribution")]
pub struct JointDistribution {
    n: usize,
    weights: Vec<f64>,
}

#[derive(Deserialize)]
struct RawDistribution {
    n: usize,
    weights: Vec<f64>,
}

impl TryFrom<RawDistribution> for JointDistribution {
    type Error = ClassicalError;

    fn try_from(raw: RawDistribution) -> Result<Self, Self::Error> {
        JointDistribution::new(raw.n, raw.weights)
    }
}

impl JointDistribution {
    /// Validates and renormalizes a weight vector.
    ///
    /// Weights must be finite, nonnegative, of length `2^n`, and sum to 1
    /// within [`INTAKE_TOLERANCE`]; a sum inside the tolerance is divided
    /// out so the stored vector sums to 1 exactly (up to rounding).
    pub fn new(n: usize, mut weights: Vec<f64>) -> Result<Self, ClassicalError> {
        if n > MAX_PROPOSITIONS {
            return Err(ClassicalError::TooManyPropositions { n, max: MAX_PROPOSITIONS });
        }
        let expected = 1usize << n;
        if weights.len() != expected {
            return Err(ClassicalError::WrongLength { n, expected, got: weights.len() });
        }
        for (index, &w) in weights.iter().enumerate() {
            if !w.is_finite() {
                return Err(ClassicalError::NonFiniteWeight { index });
            }
            if w < 0.0 {
                return Err(ClassicalError::NegativeWeight { index, value: w });
            }
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > INTAKE_TOLERANCE {
            return Err(ClassicalError::NotNormalized { sum, tolerance: INTAKE_TOLERANCE });
        }
        for w in &mut weights {
            *w /= sum;
        }
        Ok(JointDistribution { n, weights })
    }

    /// Uniform distribution over all assignments.
    pub fn uniform(n: usize) -> Result<Self, ClassicalError> {
        if n > MAX_PROPOSITIONS {
            return Err(ClassicalError::TooManyPropositions { n, max: MAX_PROPOSITIONS });
        }
        let len = 1usize << n;
        Ok(JointDistribution { n, weights: vec![1.0 / len as f64; len] })
    }

    /// All weight on a single assignment.
    pub fn point_mass(assignment: &[bool]) -> Result<Self, ClassicalError> {
        let n = assignment.len();
        if n > MAX_PROPOSITIONS {
            return Err(ClassicalError::TooManyPropositions { n, max: MAX_PROPOSITIONS });
        }
        let mut weights = vec![0.0; 1usize << n];
        weights[index_of(assignment)] = 1.0;
        Ok(JointDistribution { n, weights })
    }

    /// Uniform draw from the simplex of distributions.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self, ClassicalError> {
        if n > MAX_PROPOSITIONS {
            return Err(ClassicalError::TooManyPropositions { n, max: MAX_PROPOSITIONS });
        }
        Ok(JointDistribution { n, weights: simplex_weights(1 << n, rng) })
    }

    pub fn proposition_count(&self) -> usize {
        self.n
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    fn check_literals(&self, literals: &[Literal]) -> Result<(), ClassicalError> {
        for (pos, lit) in literals.iter().enumerate() {
            if lit.index >= self.n {
                return Err(ClassicalError::UnknownProposition { index: lit.index, n: self.n });
            }
            if literals[..pos].iter().any(|prev| prev.index == lit.index) {
                return Err(ClassicalError::DuplicateProposition { index: lit.index });
            }
        }
        Ok(())
    }

    fn matches(&self, index: usize, literals: &[Literal]) -> bool {
        literals.iter().all(|lit| {
            let digit = (index >> (self.n - 1 - lit.index)) & 1;
            (digit == 0) == lit.value
        })
    }

    /// Probability that every literal holds. The empty set marginalizes to 1.
    pub fn marginal(&self, literals: &[Literal]) -> Result<f64, ClassicalError> {
        self.check_literals(literals)?;
        Ok(self
            .weights
            .iter()
            .enumerate()
            .filter(|(k, _)| self.matches(*k, literals))
            .map(|(_, w)| w)
            .sum())
    }

    /// Conditional probability of `target` given `given`.
    ///
    /// The two literal sets must mention disjoint propositions; conditioning
    /// on an event of probability zero is an error, not a NaN.
    pub fn conditional(&self, target: &[Literal], given: &[Literal]) -> Result<f64, ClassicalError> {
        let mut combined = Vec::with_capacity(target.len() + given.len());
        combined.extend_from_slice(target);
        combined.extend_from_slice(given);
        self.check_literals(&combined)?;
        let given_mass = self.marginal(given)?;
        if given_mass == 0.0 {
            return Err(ClassicalError::ZeroConditioningMass);
        }
        Ok(self.marginal(&combined)? / given_mass)
    }
}

/// Residuals of the two factorizations of a joint probability.
///
/// For propositions `p`, `q` the product rule states
/// `P(p & q) = P(p) P(q | p) = P(q) P(p | q)`. Each field holds
/// `P(p & q) - factorization`, or `None` when the conditional it needs is
/// undefined because the conditioning marginal is zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProductRuleResidual {
    /// `P(p & q) - P(p) P(q | p)`; `None` iff `P(p) = 0`.
    pub via_conditioning_on_p: Option<f64>,
    /// `P(p & q) - P(q) P(p | q)`; `None` iff `P(q) = 0`.
    pub via_conditioning_on_q: Option<f64>,
}

/// Evaluates both product-rule factorizations of `P(p & q)`.
///
/// On any distribution both defined residuals vanish to rounding; the
/// function exists so that calling code (and tests) can watch the identity
/// hold, and so the degenerate zero-marginal cases are reported as
/// `None` rather than as division noise.
pub fn product_rule_residual(
    d: &JointDistribution,
    p: usize,
    q: usize,
) -> Result<ProductRuleResidual, ClassicalError> {
    if p == q {
        return Err(ClassicalError::DuplicateProposition { index: p });
    }
    let p_true = [Literal::new(p, true)];
    let q_true = [Literal::new(q, true)];
    let joint = d.marginal(&[Literal::new(p, true), Literal::new(q, true)])?;
    let mass_p = d.marginal(&p_true)?;
    let mass_q = d.marginal(&q_true)?;
    let via_conditioning_on_p = if mass_p == 0.0 {
        None
    } else {
        Some(joint - mass_p * d.conditional(&q_true, &p_true)?)
    };
    let via_conditioning_on_q = if mass_q == 0.0 {
        None
    } else {
        Some(joint - mass_q * d.conditional(&p_true, &q_true)?)
    };
    Ok(ProductRuleResidual { via_conditioning_on_p, via_conditioning_on_q })
}

/// Classical Wigner-d'Espagnat inequality on the triple `(a, b, c)`:
/// `P(a & b) + P(!b & c) >= P(a & c)`.
///
/// A theorem of every joint distribution, so the returned report never has
/// `violated` set; the report form matches the starred variant so the two
/// can sit side by side.
pub fn wd_classical(
    d: &JointDistribution,
    a: usize,
    b: usize,
    c: usize,
) -> Result<InequalityReport, ClassicalError> {
    for (pos, &x) in [a, b, c].iter().enumerate() {
        if x >= d.proposition_count() {
            return Err(ClassicalError::UnknownProposition { index: x, n: d.proposition_count() });
        }
        if [a, b, c][..pos].contains(&x) {
            return Err(ClassicalError::DuplicateProposition { index: x });
        }
    }
    let lhs = d.marginal(&[Literal::new(a, true), Literal::new(b, true)])?
        + d.marginal(&[Literal::new(b, false), Literal::new(c, true)])?;
    let bound = d.marginal(&[Literal::new(a, true), Literal::new(c, true)])?;
    Ok(InequalityReport::lower_bounded("wigner-despagnat", lhs, bound)
        .with_witness(format!("propositions ({a}, {b}, {c})")))
}
