//! Ternary-outcome distributions and observability-conditioned events.
//!
//! Each proposition resolves to one of three outcomes: `T` (true and
//! observable), `F` (false and observable), `U` (unobservable). `U` is not a
//! third truth value; it is the absence of a truth value in the record. A
//! [`TernaryDistribution`] over `n` propositions weights all `3^n` outcome
//! assignments, ordered with proposition 0 as the most significant base-3
//! digit and digits `0 = T`, `1 = F`, `2 = U`; for two propositions the basis
//! reads `TT, TF, TU, FT, FF, FU, UT, UF, UU`.
//!
//! The starred event `p*` is "p resolved observably with the stated truth
//! value": outcome `T` for a true literal, `F` for a false one.
//! [`TernaryDistribution::star_joint`] measures conjunctions of such events,
//! leaving unlisted propositions unconstrained. The measurable frequency
//!
//! ```text
//! [p] = P(p = T) / (P(p = T) + P(p = F))
//! ```
//!
//! is truth conditioned on observability, the only frequency an experiment
//! that sometimes fails to observe can report.
//!
//! Substituting starred events into the classical Wigner-d'Espagnat
//! inequality gives [`wd_star`], which is not a theorem: any mass on
//! assignments where the middle proposition is `U` while the outer two are
//! observably true escapes both left-hand terms yet counts on the right. The
//! point mass on `(T, U, T)` pushes the margin to its floor of -1.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classical::{JointDistribution, Literal, INTAKE_TOLERANCE};
use crate::report::InequalityReport;
use crate::sampling::simplex_weights;

/// Dense enumeration cap: `3^10` weights (59049) is the largest ternary joint
/// this module will materialize.
pub const MAX_TERNARY_PROPOSITIONS: usize = 10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TernaryError {
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
    #[error("proposition {index} is never observable; its measurable frequency is undefined")]
    NeverObservable { index: usize },
}

/// Outcome of one proposition in one trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TernaryOutcome {
    /// True, and the trial observed it.
    True,
    /// False, and the trial observed it.
    False,
    /// The trial never resolved the proposition either way.
    Unobservable,
}

impl TernaryOutcome {
    pub const ALL: [TernaryOutcome; 3] =
        [TernaryOutcome::True, TernaryOutcome::False, TernaryOutcome::Unobservable];

    /// Base-3 digit used in weight indexing: T = 0, F = 1, U = 2.
    pub fn digit(self) -> usize {
        match self {
            TernaryOutcome::True => 0,
            TernaryOutcome::False => 1,
            TernaryOutcome::Unobservable => 2,
        }
    }

    pub fn from_digit(digit: usize) -> Option<Self> {
        match digit {
            0 => Some(TernaryOutcome::True),
            1 => Some(TernaryOutcome::False),
            2 => Some(TernaryOutcome::Unobservable),
            _ => None,
        }
    }

    /// Outcome demanded by a starred literal: a true literal demands `T`, a
    /// false one demands `F`. `U` satisfies no literal.
    pub fn from_literal_value(value: bool) -> Self {
        if value {
            TernaryOutcome::True
        } else {
            TernaryOutcome::False
        }
    }

    pub fn symbol(self) -> char {
        match self {
            TernaryOutcome::True => 'T',
            TernaryOutcome::False => 'F',
            TernaryOutcome::Unobservable => 'U',
        }
    }
}

impl std::fmt::Display for TernaryOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Basis index of a full outcome assignment (`assignment[0]` is
/// proposition 0, the most significant digit).
pub fn index_of_outcomes(assignment: &[TernaryOutcome]) -> usize {
    assignment.iter().fold(0usize, |acc, o| acc * 3 + o.digit())
}

/// Inverse of [`index_of_outcomes`] for a context of `n` propositions.
pub fn outcomes_of(index: usize, n: usize) -> Vec<TernaryOutcome> {
    let mut digits = vec![TernaryOutcome::True; n];
    let mut rest = index;
    for i in (0..n).rev() {
        digits[i] = TernaryOutcome::from_digit(rest % 3).unwrap();
        rest /= 3;
    }
    digits
}

fn pow3(n: usize) -> usize {
    3usize.pow(n as u32)
}

/// Joint distribution over all `3^n` ternary outcome assignments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawTernary")]
pub struct TernaryDistribution {
    n: usize,
    weights: Vec<f64>,
}

#[derive(Deserialize)]
struct RawTernary {
    n: usize,
    weights: Vec<f64>,
}

impl TryFrom<RawTernary> for TernaryDistribution {
    type Error = TernaryError;

    fn try_from(raw: RawTernary) -> Result<Self, Self::Error> {
        TernaryDistribution::new(raw.n, raw.weights)
    }
}

impl TernaryDistribution {
    /// Validates and renormalizes a weight vector; same intake contract as
    /// the classical constructor, with length `3^n`.
    pub fn new(n: usize, mut weights: Vec<f64>) -> Result<Self, TernaryError> {
        if n > MAX_TERNARY_PROPOSITIONS {
            return Err(TernaryError::TooManyPropositions { n, max: MAX_TERNARY_PROPOSITIONS });
        }
        let expected = pow3(n);
        if weights.len() != expected {
            return Err(TernaryError::WrongLength { n, expected, got: weights.len() });
        }
        for (index, &w) in weights.iter().enumerate() {
            if !w.is_finite() {
                return Err(TernaryError::NonFiniteWeight { index });
            }
            if w < 0.0 {
                return Err(TernaryError::NegativeWeight { index, value: w });
            }
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > INTAKE_TOLERANCE {
            return Err(TernaryError::NotNormalized { sum, tolerance: INTAKE_TOLERANCE });
        }
        for w in &mut weights {
            *w /= sum;
        }
        Ok(TernaryDistribution { n, weights })
    }

    pub fn uniform(n: usize) -> Result<Self, TernaryError> {
        if n > MAX_TERNARY_PROPOSITIONS {
            return Err(TernaryError::TooManyPropositions { n, max: MAX_TERNARY_PROPOSITIONS });
        }
        let len = pow3(n);
        Ok(TernaryDistribution { n, weights: vec![1.0 / len as f64; len] })
    }

    /// All weight on a single outcome assignment.
    pub fn point_mass(assignment: &[TernaryOutcome]) -> Result<Self, TernaryError> {
        let n = assignment.len();
        if n > MAX_TERNARY_PROPOSITIONS {
            return Err(TernaryError::TooManyPropositions { n, max: MAX_TERNARY_PROPOSITIONS });
        }
        let mut weights = vec![0.0; pow3(n)];
        weights[index_of_outcomes(assignment)] = 1.0;
        Ok(TernaryDistribution { n, weights })
    }

    /// Uniform draw from the simplex of ternary distributions.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self, TernaryError> {
        if n > MAX_TERNARY_PROPOSITIONS {
            return Err(TernaryError::TooManyPropositions { n, max: MAX_TERNARY_PROPOSITIONS });
        }
        Ok(TernaryDistribution { n, weights: simplex_weights(pow3(n), rng) })
    }

    pub fn proposition_count(&self) -> usize {
        self.n
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    fn digit(&self, index: usize, proposition: usize) -> usize {
        (index / pow3(self.n - 1 - proposition)) % 3
    }

    fn check_literals(&self, literals: &[Literal]) -> Result<(), TernaryError> {
        for (pos, lit) in literals.iter().enumerate() {
            if lit.index >= self.n {
                return Err(TernaryError::UnknownProposition { index: lit.index, n: self.n });
            }
            if literals[..pos].iter().any(|prev| prev.index == lit.index) {
                return Err(TernaryError::DuplicateProposition { index: lit.index });
            }
        }
        Ok(())
    }

    /// Probability that every listed proposition resolves observably with
    /// the stated truth value (outcome `T` for true, `F` for false).
    /// Unlisted propositions are unconstrained and may be `T`, `F`, or `U`.
    pub fn star_joint(&self, literals: &[Literal]) -> Result<f64, TernaryError> {
        self.check_literals(literals)?;
        let demanded: Vec<(usize, usize)> = literals
            .iter()
            .map(|lit| (lit.index, TernaryOutcome::from_literal_value(lit.value).digit()))
            .collect();
        Ok(self
            .weights
            .iter()
            .enumerate()
            .filter(|(k, _)| demanded.iter().all(|&(i, d)| self.digit(*k, i) == d))
            .map(|(_, w)| w)
            .sum())
    }

    /// Measurable frequency of a literal: probability of the demanded
    /// observable outcome, conditioned on the proposition being observable
    /// at all. For a true literal this is `P(T) / (P(T) + P(F))`.
    pub fn measurable_frequency_literal(&self, literal: Literal) -> Result<f64, TernaryError> {
        self.check_literals(std::slice::from_ref(&literal))?;
        let mut mass = [0.0f64; 3];
        for (k, w) in self.weights.iter().enumerate() {
            mass[self.digit(k, literal.index)] += w;
        }
        let observable = mass[0] + mass[1];
        if observable == 0.0 {
            return Err(TernaryError::NeverObservable { index: literal.index });
        }
        let numerator = mass[TernaryOutcome::from_literal_value(literal.value).digit()];
        Ok(numerator / observable)
    }

    /// Measurable frequency `[p]` of proposition `p` being true.
    pub fn measurable_frequency(&self, p: usize) -> Result<f64, TernaryError> {
        self.measurable_frequency_literal(Literal::new(p, true))
    }

    /// Probability that proposition `p` is observable at all.
    pub fn observability_mass(&self, p: usize) -> Result<f64, TernaryError> {
        self.check_literals(&[Literal::new(p, true)])?;
        Ok(self
            .weights
            .iter()
            .enumerate()
            .filter(|(k, _)| self.digit(*k, p) != TernaryOutcome::Unobservable.digit())
            .map(|(_, w)| w)
            .sum())
    }
}

/// Embeds a classical joint distribution as the U-free ternary distribution
/// with the same weights on all-observable assignments.
///
/// Starred operations on the lift reproduce their classical counterparts
/// exactly: with no `U` mass, conditioning on observability conditions on
/// the sure event.
pub fn lift_classical(d: &JointDistribution) -> Result<TernaryDistribution, TernaryError> {
    let n = d.proposition_count();
    if n > MAX_TERNARY_PROPOSITIONS {
        return Err(TernaryError::TooManyPropositions { n, max: MAX_TERNARY_PROPOSITIONS });
    }
    let mut weights = vec![0.0; pow3(n)];
    for (k, &w) in d.weights().iter().enumerate() {
        // Binary digit b of proposition i maps to the ternary digit b; the
        // outcome labels agree (0 = true/T, 1 = false/F).
        let mut ternary_index = 0usize;
        for i in 0..n {
            let bit = (k >> (n - 1 - i)) & 1;
            ternary_index = ternary_index * 3 + bit;
        }
        weights[ternary_index] = w;
    }
    Ok(TernaryDistribution { n, weights })
}

/// Starred Wigner-d'Espagnat inequality on the triple `(a, b, c)`:
///
/// ```text
/// P(a* & b*) + P((!b)* & c*) >= P(a* & c*)
/// ```
///
/// where each starred literal demands an observable resolution. Unlike the
/// classical form this can fail: mass where `b` is unobservable while `a`
/// and `c` are observably true counts only on the right.
pub fn wd_star(
    d: &TernaryDistribution,
    a: usize,
    b: usize,
    c: usize,
) -> Result<InequalityReport, TernaryError> {
    for (pos, &x) in [a, b, c].iter().enumerate() {
        if x >= d.proposition_count() {
            return Err(TernaryError::UnknownProposition { index: x, n: d.proposition_count() });
        }
        if [a, b, c][..pos].contains(&x) {
            return Err(TernaryError::DuplicateProposition { index: x });
        }
    }
    let lhs = d.star_joint(&[Literal::new(a, true), Literal::new(b, true)])?
        + d.star_joint(&[Literal::new(b, false), Literal::new(c, true)])?;
    let bound = d.star_joint(&[Literal::new(a, true), Literal::new(c, true)])?;
    Ok(InequalityReport::lower_bounded("wigner-despagnat-star", lhs, bound)
        .with_witness(format!("propositions ({a}, {b}, {c})")))
}

/// The point mass that pushes [`wd_star`] to its extreme margin of -1:
/// all weight on `(T, U, T)`, so the right-hand event is certain while both
/// left-hand events demand an observable resolution of the middle
/// proposition that never happens.
pub fn wd_maximal_violator() -> TernaryDistribution {
    TernaryDistribution::point_mass(&[
        TernaryOutcome::True,
        TernaryOutcome::Unobservable,
        TernaryOutcome::True,
    ])
    .expect("three propositions are under the enumeration cap")
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use crate::classical::{wd_classical, JointDistribution};

    use super::*;

    // Independent enumeration oracle, mirroring the classical test oracle:
    // assignments generated recursively in basis order, events checked by
    // direct outcome lookup.
    fn enumerate_outcomes(n: usize) -> Vec<Vec<TernaryOutcome>> {
        let mut out: Vec<Vec<TernaryOutcome>> = vec![vec![]];
        for _ in 0..n {
            let mut next = Vec::with_capacity(out.len() * 3);
            for a in &out {
                for o in TernaryOutcome::ALL {
                    let mut b = a.clone();
                    b.push(o);
                    next.push(b);
                }
            }
            out = next;
        }
        out
    }

    fn oracle_star_joint(d: &TernaryDistribution, literals: &[Literal]) -> f64 {
        enumerate_outcomes(d.proposition_count())
            .iter()
            .zip(d.weights())
            .filter(|(a, _)| {
                literals
                    .iter()
                    .all(|lit| a[lit.index] == TernaryOutcome::from_literal_value(lit.value))
            })
            .map(|(_, w)| w)
            .sum()
    }

    fn oracle_measurable_frequency(d: &TernaryDistribution, p: usize) -> Option<f64> {
        let outcomes = enumerate_outcomes(d.proposition_count());
        let mass = |want: TernaryOutcome| -> f64 {
            outcomes
                .iter()
                .zip(d.weights())
                .filter(|(a, _)| a[p] == want)
                .map(|(_, w)| w)
                .sum()
        };
        let t = mass(TernaryOutcome::True);
        let f = mass(TernaryOutcome::False);
        if t + f == 0.0 {
            None
        } else {
            Some(t / (t + f))
        }
    }

    #[test]
    fn basis_order_matches_enumeration() {
        let order = enumerate_outcomes(2);
        let labels: Vec<String> =
            order.iter().map(|a| a.iter().map(|o| o.symbol()).collect()).collect();
        assert_eq!(
            labels,
            ["TT", "TF", "TU", "FT", "FF", "FU", "UT", "UF", "UU"]
        );
        for (k, a) in order.iter().enumerate() {
            assert_eq!(index_of_outcomes(a), k);
            assert_eq!(&outcomes_of(k, 2), a);
        }
    }

    #[test]
    fn intake_validation() {
        assert!(TernaryDistribution::new(1, vec![0.3, 0.1, 0.6]).is_ok());
        assert!(matches!(
            TernaryDistribution::new(2, vec![1.0; 3]),
            Err(TernaryError::WrongLength { expected: 9, got: 3, .. })
        ));
        assert!(matches!(
            TernaryDistribution::new(1, vec![-0.1, 0.5, 0.6]),
            Err(TernaryError::NegativeWeight { index: 0, .. })
        ));
        assert!(matches!(
            TernaryDistribution::new(1, vec![0.5, 0.5, 0.5]),
            Err(TernaryError::NotNormalized { .. })
        ));
        assert!(matches!(
            TernaryDistribution::new(11, vec![0.0; 177147]),
            Err(TernaryError::TooManyPropositions { n: 11, max: 10 })
        ));
    }

    #[test]
    fn measurable_frequency_worked_example() {
        let d = TernaryDistribution::new(1, vec![0.3, 0.1, 0.6]).unwrap();
        assert!((d.measurable_frequency(0).unwrap() - 0.75).abs() < 1e-12);
        assert!((d.observability_mass(0).unwrap() - 0.4).abs() < 1e-12);
    }

    #[test]
    fn never_observable_is_an_error() {
        let d = TernaryDistribution::new(1, vec![0.0, 0.0, 1.0]).unwrap();
        assert!(matches!(
            d.measurable_frequency(0),
            Err(TernaryError::NeverObservable { index: 0 })
        ));
    }

    #[test]
    fn lift_preserves_frequencies() {
        let half = JointDistribution::new(1, vec![0.5, 0.5]).unwrap();
        let lifted = lift_classical(&half).unwrap();
        assert_eq!(lifted.weights(), &[0.5, 0.5, 0.0]);
        assert!((lifted.measurable_frequency(0).unwrap() - 0.5).abs() < 1e-12);

        let pm = JointDistribution::point_mass(&[true, true]).unwrap();
        let lifted = lift_classical(&pm).unwrap();
        let expected = index_of_outcomes(&[TernaryOutcome::True, TernaryOutcome::True]);
        assert_eq!(lifted.weights()[expected], 1.0);
        assert!((lifted.weights().iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn star_joint_point_mass_examples() {
        let d = TernaryDistribution::point_mass(&[
            TernaryOutcome::True,
            TernaryOutcome::Unobservable,
            TernaryOutcome::True,
        ])
        .unwrap();
        let ac = d.star_joint(&[Literal::new(0, true), Literal::new(2, true)]).unwrap();
        assert_eq!(ac, 1.0);
        let ab = d.star_joint(&[Literal::new(0, true), Literal::new(1, true)]).unwrap();
        assert_eq!(ab, 0.0);

        let u = TernaryDistribution::uniform(1).unwrap();
        let t = u.star_joint(&[Literal::new(0, true)]).unwrap();
        assert!((t - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn star_joint_rejects_bad_literal_sets() {
        let d = TernaryDistribution::uniform(2).unwrap();
        assert!(matches!(
            d.star_joint(&[Literal::new(2, true)]),
            Err(TernaryError::UnknownProposition { index: 2, n: 2 })
        ));
        assert!(matches!(
            d.star_joint(&[Literal::new(1, true), Literal::new(1, false)]),
            Err(TernaryError::DuplicateProposition { index: 1 })
        ));
    }

    #[test]
    fn wd_star_point_mass_violation_is_exact() {
        let d = TernaryDistribution::point_mass(&[
            TernaryOutcome::True,
            TernaryOutcome::Unobservable,
            TernaryOutcome::True,
        ])
        .unwrap();
        let r = wd_star(&d, 0, 1, 2).unwrap();
        assert_eq!(r.lhs, 0.0);
        assert_eq!(r.bound, 1.0);
        assert_eq!(r.margin, -1.0);
        assert!(r.violated);
    }

    #[test]
    fn wd_star_uniform_is_satisfied() {
        let d = TernaryDistribution::uniform(3).unwrap();
        let r = wd_star(&d, 0, 1, 2).unwrap();
        assert!((r.lhs - 2.0 / 9.0).abs() < 1e-12);
        assert!((r.bound - 1.0 / 9.0).abs() < 1e-12);
        assert!(!r.violated);
    }

    #[test]
    fn wd_star_monotone_under_u_removal() {
        // Start from the maximal violator and reassign B's U mass to T and F
        // in several proportions; every reassignment restores the theorem.
        let base = index_of_outcomes(&[
            TernaryOutcome::True,
            TernaryOutcome::Unobservable,
            TernaryOutcome::True,
        ]);
        let to_t = index_of_outcomes(&[
            TernaryOutcome::True,
            TernaryOutcome::True,
            TernaryOutcome::True,
        ]);
        let to_f = index_of_outcomes(&[
            TernaryOutcome::True,
            TernaryOutcome::False,
            TernaryOutcome::True,
        ]);
        for split in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let mut weights = vec![0.0; 27];
            weights[to_t] = split;
            weights[to_f] = 1.0 - split;
            assert_eq!(weights[base], 0.0);
            let d = TernaryDistribution::new(3, weights).unwrap();
            let r = wd_star(&d, 0, 1, 2).unwrap();
            assert!(!r.violated, "split {split} margin {}", r.margin);
        }
    }

    #[test]
    fn star_joint_matches_enumeration_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for n in [1usize, 2, 3, 4] {
            let d = TernaryDistribution::random(n, &mut rng).unwrap();
            for trial in 0..20 {
                let k = 1 + trial % n;
                let mut literals = Vec::new();
                let mut used = vec![false; n];
                while literals.len() < k {
                    let i = rng.random_range(0..n);
                    if !used[i] {
                        used[i] = true;
                        literals.push(Literal::new(i, rng.random::<bool>()));
                    }
                }
                let got = d.star_joint(&literals).unwrap();
                let want = oracle_star_joint(&d, &literals);
                assert!((got - want).abs() < 1e-12);
            }
            for p in 0..n {
                let got = d.measurable_frequency(p).unwrap();
                let want = oracle_measurable_frequency(&d, p).unwrap();
                assert!((got - want).abs() < 1e-12);
            }
        }
    }

    proptest! {
        #[test]
        fn lifted_star_operations_reduce_to_classical(seed in 0u64..400) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let d = JointDistribution::random(3, &mut rng).unwrap();
            let lifted = lift_classical(&d).unwrap();

            for i in 0..3 {
                let star = lifted.star_joint(&[Literal::new(i, true)]).unwrap();
                let plain = d.marginal(&[Literal::new(i, true)]).unwrap();
                prop_assert!((star - plain).abs() < 1e-12);

                let freq = lifted.measurable_frequency(i).unwrap();
                prop_assert!((freq - plain).abs() < 1e-12);
            }

            let pair = [Literal::new(0, true), Literal::new(2, false)];
            let star = lifted.star_joint(&pair).unwrap();
            let plain = d.marginal(&pair).unwrap();
            prop_assert!((star - plain).abs() < 1e-12);
        }

        #[test]
        fn lifted_wd_star_is_never_violated(seed in 0u64..400) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let d = JointDistribution::random(3, &mut rng).unwrap();
            let lifted = lift_classical(&d).unwrap();
            let starred = wd_star(&lifted, 0, 1, 2).unwrap();
            let plain = wd_classical(&d, 0, 1, 2).unwrap();
            prop_assert!(!starred.violated);
            prop_assert!((starred.margin - plain.margin).abs() < 1e-12);
        }

        #[test]
        fn complement_frequencies_sum_to_one(seed in 0u64..400) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let d = TernaryDistribution::random(2, &mut rng).unwrap();
            for p in 0..2 {
                let t = d.measurable_frequency_literal(Literal::new(p, true)).unwrap();
                let f = d.measurable_frequency_literal(Literal::new(p, false)).unwrap();
                prop_assert!((t + f - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn serde_round_trip_revalidates() {
        let d = TernaryDistribution::new(1, vec![0.3, 0.1, 0.6]).unwrap();
        let json = serde_json::to_string(&d).unwrap();
        let back: TernaryDistribution = serde_json::from_str(&json).unwrap();
        assert_eq!(d, back);

        let bad = r#"{"n":1,"weights":[0.9,0.9,0.9]}"#;
        assert!(serde_json::from_str::<TernaryDistribution>(bad).is_err());
    }
}
