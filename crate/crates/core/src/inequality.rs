//! CHSH in post-selected form, its deterministic classical bound, and
//! certification of whether a ternary distribution stays inside the
//! classical envelope.
//!
//! The scenario is the standard two-party one: Alice chooses between
//! settings `A1`, `A2`, Bob between `B1`, `B2`, and the four propositions
//! occupy basis positions 0..4 in that order. Outcomes are scored `T = +1`,
//! `F = -1`. The starred correlation of a settings pair conditions on that
//! pair being jointly observable:
//!
//! ```text
//! E*(a, b) = [P(T,T) + P(F,F) - P(T,F) - P(F,T)] / P(a observable, b observable)
//! ```
//!
//! Each correlation carries its own post-selection denominator, so the four
//! terms of `E*(A1,B1) + E*(A1,B2) + E*(A2,B1) - E*(A2,B2)` may condition on
//! four different subpopulations. That is exactly what breaks the classical
//! derivation of the bound 2: a mixture of four point masses, each making a
//! single settings pair observable, drives every correlation to +-1 of the
//! sign of its choosing and the combination to 4.
//!
//! [`deterministic_chsh_bound`] is the classical side of the demarcation: a
//! brute-force enumeration of all 16 deterministic strategies, whose maximum
//! is 2. [`certify`] scans every proposition permutation of a distribution
//! and reports whether any starred inequality is violated.

use serde::Serialize;
use thiserror::Error;

use crate::classical::Literal;
use crate::report::{InequalityReport, RequiredArity, StarInequality};
use crate::ternary::{self, TernaryDistribution, TernaryError, TernaryOutcome};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InequalityError {
    #[error("{inequality} needs {needs} propositions, distribution has {got}")]
    ArityMismatch { inequality: StarInequality, needs: RequiredArity, got: usize },
    #[error("settings pair ({alice}, {bob}) is never jointly observable; its correlation is undefined")]
    ZeroContext { alice: AliceSetting, bob: BobSetting },
    #[error(transparent)]
    Ternary(#[from] TernaryError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AliceSetting {
    A1,
    A2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BobSetting {
    B1,
    B2,
}

impl std::fmt::Display for AliceSetting {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

impl std::fmt::Display for BobSetting {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A ternary distribution over the four CHSH propositions, with an explicit
/// assignment of propositions to the roles `[A1, A2, B1, B2]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChshScenario {
    distribution: TernaryDistribution,
    roles: [usize; 4],
}

impl ChshScenario {
    /// Scenario with the identity role assignment: proposition 0 is `A1`,
    /// 1 is `A2`, 2 is `B1`, 3 is `B2`.
    pub fn new(distribution: TernaryDistribution) -> Result<Self, InequalityError> {
        Self::with_roles(distribution, [0, 1, 2, 3])
    }

    /// Scenario with `roles[r]` naming the proposition playing role `r`, in
    /// the order `[A1, A2, B1, B2]`. The roles must be a permutation of the
    /// four propositions.
    pub fn with_roles(
        distribution: TernaryDistribution,
        roles: [usize; 4],
    ) -> Result<Self, InequalityError> {
        let n = distribution.proposition_count();
        let needs = StarInequality::ChshStar.required_arity();
        if !needs.accepts(n) {
            return Err(InequalityError::ArityMismatch {
                inequality: StarInequality::ChshStar,
                needs,
                got: n,
            });
        }
        for (pos, &r) in roles.iter().enumerate() {
            if r >= n {
                return Err(TernaryError::UnknownProposition { index: r, n }.into());
            }
            if roles[..pos].contains(&r) {
                return Err(TernaryError::DuplicateProposition { index: r }.into());
            }
        }
        Ok(ChshScenario { distribution, roles })
    }

    pub fn distribution(&self) -> &TernaryDistribution {
        &self.distribution
    }

    pub fn roles(&self) -> [usize; 4] {
        self.roles
    }

    fn role_index(&self, alice: AliceSetting, bob: BobSetting) -> (usize, usize) {
        let a = match alice {
            AliceSetting::A1 => self.roles[0],
            AliceSetting::A2 => self.roles[1],
        };
        let b = match bob {
            BobSetting::B1 => self.roles[2],
            BobSetting::B2 => self.roles[3],
        };
        (a, b)
    }

    /// Post-selected correlation of one settings pair: the +-1 product
    /// averaged over the trials where both chosen propositions resolved
    /// observably. Unchosen propositions are unconstrained.
    pub fn star_correlation(
        &self,
        alice: AliceSetting,
        bob: BobSetting,
    ) -> Result<f64, InequalityError> {
        let (i, j) = self.role_index(alice, bob);
        let d = &self.distribution;
        let tt = d.star_joint(&[Literal::new(i, true), Literal::new(j, true)])?;
        let ff = d.star_joint(&[Literal::new(i, false), Literal::new(j, false)])?;
        let tf = d.star_joint(&[Literal::new(i, true), Literal::new(j, false)])?;
        let ft = d.star_joint(&[Literal::new(i, false), Literal::new(j, true)])?;
        let denominator = tt + ff + tf + ft;
        if denominator == 0.0 {
            return Err(InequalityError::ZeroContext { alice, bob });
        }
        Ok((tt + ff - tf - ft) / denominator)
    }

    /// CHSH combination `E*(A1,B1) + E*(A1,B2) + E*(A2,B1) - E*(A2,B2)`
    /// against the classical bound `|value| <= 2`.
    pub fn chsh_star(&self) -> Result<InequalityReport, InequalityError> {
        let e11 = self.star_correlation(AliceSetting::A1, BobSetting::B1)?;
        let e12 = self.star_correlation(AliceSetting::A1, BobSetting::B2)?;
        let e21 = self.star_correlation(AliceSetting::A2, BobSetting::B1)?;
        let e22 = self.star_correlation(AliceSetting::A2, BobSetting::B2)?;
        let value = e11 + e12 + e21 - e22;
        let [a1, a2, b1, b2] = self.roles;
        Ok(InequalityReport::upper_bounded_abs("chsh-star", value, 2.0)
            .with_witness(format!("roles A1={a1}, A2={a2}, B1={b1}, B2={b2}")))
    }
}

/// Result of enumerating every deterministic CHSH strategy.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeterministicChshBound {
    /// Largest CHSH combination any strategy attains; always 2.
    pub maximum: f64,
    /// One strategy attaining the maximum, as `[A1, A2, B1, B2]` signs.
    pub maximizer: [i8; 4],
    /// Every strategy with its CHSH value, in enumeration order.
    pub evaluations: Vec<Strategy>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Strategy {
    pub signs: [i8; 4],
    pub value: f64,
}

/// Enumerates all 16 assignments of +-1 to `(A1, A2, B1, B2)` and scores
/// `a1 b1 + a1 b2 + a2 b1 - a2 b2` for each.
///
/// This is the classical ceiling: any single joint distribution over the
/// four propositions is a mixture of these strategies, and the CHSH
/// combination is linear in the mixture, so no classical distribution can
/// exceed the maximum found here.
pub fn deterministic_chsh_bound() -> DeterministicChshBound {
    let mut evaluations = Vec::with_capacity(16);
    let mut maximum = f64::NEG_INFINITY;
    let mut maximizer = [1i8; 4];
    for mask in 0..16u32 {
        let sign = |bit: u32| -> i8 { if mask >> bit & 1 == 0 { 1 } else { -1 } };
        let signs = [sign(3), sign(2), sign(1), sign(0)];
        let [a1, a2, b1, b2] = signs.map(f64::from);
        let value = a1 * b1 + a1 * b2 + a2 * b1 - a2 * b2;
        if value > maximum {
            maximum = value;
            maximizer = signs;
        }
        evaluations.push(Strategy { signs, value });
    }
    DeterministicChshBound { maximum, maximizer, evaluations }
}

/// The mixture that drives the post-selected CHSH combination to 4.
///
/// Four point masses at weight 1/4, each leaving exactly one settings pair
/// observable: `(T,U,T,U)`, `(T,U,U,T)`, `(U,T,T,U)` give their pairs
/// product +1, and `(U,T,U,F)` gives `(A2,B2)` product -1. Every correlation
/// then post-selects onto a single mass and is exactly +-1.
pub fn chsh_maximal_mixture() -> TernaryDistribution {
    use TernaryOutcome::{False as F, True as T, Unobservable as U};
    let cells = [[T, U, T, U], [T, U, U, T], [U, T, T, U], [U, T, U, F]];
    let mut weights = vec![0.0; 81];
    for cell in cells {
        weights[ternary::index_of_outcomes(&cell)] = 0.25;
    }
    TernaryDistribution::new(4, weights).expect("mixture weights are normalized by construction")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// No scanned inequality was violated; the data fits inside a single
    /// classical probability space.
    Classical,
    /// At least one starred inequality failed; unobservability is doing
    /// structural work.
    Contextual,
}

/// Outcome of scanning a distribution against starred inequalities over all
/// proposition permutations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub verdict: Verdict,
    /// First violating report found, scanning inequalities in argument order
    /// and permutations lexicographically.
    pub violation: Option<InequalityReport>,
    pub permutations_checked: usize,
    /// Permutations skipped because a post-selected correlation had an empty
    /// context; they can witness nothing either way.
    pub permutations_undefined: usize,
}

/// Scans `d` against each listed inequality over all ordered proposition
/// permutations, stopping at the first violation.
///
/// `Classical` verdicts are exhaustive: every permutation of every listed
/// inequality was evaluated (or counted as undefined). Arity is validated
/// for the whole list before anything runs, so a mismatched inequality
/// fails the call rather than silently shrinking the scan.
pub fn certify(
    d: &TernaryDistribution,
    inequalities: &[StarInequality],
) -> Result<Certificate, InequalityError> {
    let n = d.proposition_count();
    for &inequality in inequalities {
        let needs = inequality.required_arity();
        if !needs.accepts(n) {
            return Err(InequalityError::ArityMismatch { inequality, needs, got: n });
        }
    }

    let mut checked = 0usize;
    let mut undefined = 0usize;
    for &inequality in inequalities {
        match inequality {
            StarInequality::WdStar => {
                for a in 0..n {
                    for b in 0..n {
                        for c in 0..n {
                            if a == b || a == c || b == c {
                                continue;
                            }
                            let report = ternary::wd_star(d, a, b, c)?;
                            checked += 1;
                            if report.violated {
                                return Ok(Certificate {
                                    verdict: Verdict::Contextual,
                                    violation: Some(report),
                                    permutations_checked: checked,
                                    permutations_undefined: undefined,
                                });
                            }
                        }
                    }
                }
            }
            StarInequality::ChshStar => {
                for roles in permutations_of_four() {
                    let scenario = ChshScenario::with_roles(d.clone(), roles)?;
                    match scenario.chsh_star() {
                        Ok(report) => {
                            checked += 1;
                            if report.violated {
                                return Ok(Certificate {
                                    verdict: Verdict::Contextual,
                                    violation: Some(report),
                                    permutations_checked: checked,
                                    permutations_undefined: undefined,
                                });
                            }
                        }
                        Err(InequalityError::ZeroContext { .. }) => undefined += 1,
                        Err(other) => return Err(other),
                    }
                }
            }
        }
    }
    Ok(Certificate {
        verdict: Verdict::Classical,
        violation: None,
        permutations_checked: checked,
        permutations_undefined: undefined,
    })
}

fn permutations_of_four() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    if a != b && a != c && a != d && b != c && b != d && c != d {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}
