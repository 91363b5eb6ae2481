//! Two parallel probability algebras over finite proposition contexts.
//!
//! The classical side ([`classical`]) is ordinary Kolmogorov probability: a
//! context of `n` binary propositions, a joint distribution over its `2^n`
//! truth assignments, marginals, conditionals, and the theorems that follow
//! (the product rule, the Wigner-d'Espagnat inequality).
//!
//! The observability side ([`ternary`]) replaces the binary outcome of each
//! proposition with a ternary one: `T` (true and observable), `F` (false and
//! observable), `U` (unobservable). The only empirically accessible quantity
//! is then the *measurable frequency* `[p]`, the probability of truth
//! conditioned on observability. Starred analogues of classical theorems are
//! no longer theorems: a distribution with `U` weight in the right place
//! violates the starred Wigner-d'Espagnat inequality, and post-selected CHSH
//! ([`inequality`]) reaches 4 where any single classical joint distribution
//! is capped at 2.
//!
//! [`operator`] gives both algebras their geometric form: unit state vectors
//! of square-root weights, diagonal projectors, Born's rule, the observability
//! pair `(P, P*)`, and the nonlinear ratio rule `[p] = <s|P|s> / <s|P*|s>`.
//! [`complex`] restores linearity for a single proposition by projecting the
//! `(sqrt pT, sqrt pF, sqrt pU)` sphere direction to a complex qubit
//! `(cos phi, e^{i theta} sin phi)`, after which `[p]` is an ordinary
//! quadratic form again. [`boxsim`] realizes the whole story as a Monte Carlo
//! experiment: a peg board decides an outcome, an observability channel
//! decides whether the trial is seen, and the conditional estimator recovers
//! `[p]`.
//!
//! # Basis order
//!
//! Every dense weight vector in this crate uses the same lexicographic
//! convention: proposition 0 is the most significant digit, and outcomes are
//! digits `0 = T`, `1 = F` (binary) or `0 = T`, `1 = F`, `2 = U` (ternary).
//! For two propositions the binary basis reads `TT, TF, FT, FF` and the
//! ternary basis reads `TT, TF, TU, FT, FF, FU, UT, UF, UU`, so the diagonal
//! projector selecting "proposition 0 true" is `diag(1,1,0,0)` respectively
//! `diag(1,1,1,0,0,0,0,0,0)`.
//!
//! # Tolerances
//!
//! Constructors accept a normalization drift of up to `1e-9` and renormalize;
//! anything further off is rejected. Internal identities (marginal
//! consistency, product rule, inequality margins) are asserted at `1e-12`.
//! Projector laws (idempotency, self-adjointness, commutation) use `1e-10`.
//!
//! # Determinism
//!
//! Everything that draws randomness takes an explicit 64-bit seed and runs it
//! through a counter-based generator, so searches and simulations are
//! reproducible bit for bit. [`boxsim`] additionally derives one substream
//! per trial, which keeps each trial's draws independent of batching.

pub mod boxsim;
pub mod classical;
pub mod complex;
pub mod inequality;
pub mod operator;
pub mod report;
pub mod sampling;
pub mod search;
pub mod ternary;

pub use classical::{Context, JointDistribution, Literal, Proposition};
pub use report::{InequalityReport, StarInequality, VIOLATION_TOLERANCE};
pub use search::{violation_search, SearchOutcome};
pub use ternary::{TernaryDistribution, TernaryOutcome};
