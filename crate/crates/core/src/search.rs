//! Budgeted numerical search for starred-inequality violations.
//!
//! The search space is the simplex of ternary distributions over `n`
//! propositions. Moves preserve total mass: either a fraction of one cell's
//! weight transfers to another cell, or a fraction of every cell with a
//! given digit for one proposition shifts to the corresponding cell with
//! another digit (e.g. "make proposition 1 more unobservable"). Random
//! restarts alternate between dense simplex draws and sparse few-cell
//! supports. The budget counts objective evaluations, including the one
//! spent scoring each restart's starting point.
//!
//! For the starred Wigner-d'Espagnat objective the margin is linear in the
//! weights, so the optimum sits at a vertex (the `(T, U, T)` point mass,
//! margin -1) and greedy transfers find it quickly. The post-selected CHSH
//! objective is a sum of ratios and genuinely nonconvex; digit shifts are
//! what lets the climber empty out whole observability planes without
//! walking through rejected intermediate states. Candidates where a CHSH
//! pair has empty context score as undefined and are never accepted over a
//! defined incumbent.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::inequality::{ChshScenario, InequalityError};
use crate::report::{InequalityReport, RequiredArity, StarInequality};
use crate::sampling::simplex_weights;
use crate::ternary::{self, TernaryDistribution, TernaryError, MAX_TERNARY_PROPOSITIONS};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error("{objective} needs {needs} propositions, got {got}")]
    ArityMismatch { objective: StarInequality, needs: RequiredArity, got: usize },
    #[error("search budget must be at least 1 evaluation")]
    ZeroBudget,
    #[error(transparent)]
    Ternary(#[from] TernaryError),
    #[error(transparent)]
    Inequality(#[from] InequalityError),
}

/// Best candidate a search run found, with its definitive report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchOutcome {
    pub objective: StarInequality,
    pub distribution: TernaryDistribution,
    /// Report of the objective inequality evaluated on `distribution`:
    /// `wigner-despagnat-star` on propositions (0, 1, 2), or `chsh-star`
    /// with identity roles.
    pub report: InequalityReport,
    /// Objective evaluations actually spent; equals the budget.
    pub evaluations: usize,
}

const TRANSFER_FRACTIONS: [f64; 5] = [1.0, 0.5, 0.25, 0.1, 0.03];
const STALL_LIMIT: usize = 300;
const RENORMALIZE_EVERY: usize = 1024;

enum RawObjective {
    /// Score = -margin of the starred Wigner-d'Espagnat triple (0, 1, 2).
    /// The margin is a fixed linear functional of the weights.
    WdMargin { coefficients: Vec<f64> },
    /// Score = CHSH combination with identity roles. `pair_classes[p][k]`
    /// is 0 when pair `p` is not jointly observable in cell `k`, otherwise
    /// the +-1 outcome product.
    ChshValue { pair_classes: [Vec<i8>; 4] },
}

impl RawObjective {
    fn build(objective: StarInequality, n: usize) -> Self {
        let m = 3usize.pow(n as u32);
        let digit = |k: usize, i: usize| (k / 3usize.pow((n - 1 - i) as u32)) % 3;
        match objective {
            StarInequality::WdStar => {
                let mut coefficients = vec![0.0; m];
                for (k, c) in coefficients.iter_mut().enumerate() {
                    let (a, b, cc) = (digit(k, 0), digit(k, 1), digit(k, 2));
                    if a == 0 && b == 0 {
                        *c += 1.0;
                    }
                    if b == 1 && cc == 0 {
                        *c += 1.0;
                    }
                    if a == 0 && cc == 0 {
                        *c -= 1.0;
                    }
                }
                RawObjective::WdMargin { coefficients }
            }
            StarInequality::ChshStar => {
                let pairs = [(0usize, 2usize), (0, 3), (1, 2), (1, 3)];
                let pair_classes = pairs.map(|(i, j)| {
                    (0..m)
                        .map(|k| {
                            let (di, dj) = (digit(k, i), digit(k, j));
                            if di == 2 || dj == 2 {
                                0i8
                            } else if di == dj {
                                1
                            } else {
                                -1
                            }
                        })
                        .collect::<Vec<i8>>()
                });
                RawObjective::ChshValue { pair_classes }
            }
        }
    }

    fn score(&self, w: &[f64]) -> Option<f64> {
        match self {
            RawObjective::WdMargin { coefficients } => {
                Some(-coefficients.iter().zip(w).map(|(c, x)| c * x).sum::<f64>())
            }
            RawObjective::ChshValue { pair_classes } => {
                let mut value = 0.0;
                for (p, classes) in pair_classes.iter().enumerate() {
                    let mut numerator = 0.0;
                    let mut denominator = 0.0;
                    for (&class, &x) in classes.iter().zip(w) {
                        if class != 0 {
                            denominator += x;
                            numerator += f64::from(class) * x;
                        }
                    }
                    if denominator == 0.0 {
                        return None;
                    }
                    let correlation = numerator / denominator;
                    value += if p == 3 { -correlation } else { correlation };
                }
                Some(value)
            }
        }
    }
}

/// Searches the `n`-proposition ternary simplex for the distribution that
/// most strongly breaks the given inequality, spending exactly `budget`
/// objective evaluations. Deterministic in `seed`.
///
/// For `WdStar` (needs `n >= 3`) the optimized quantity is the margin of the
/// triple (0, 1, 2), minimized; the analytic optimum is -1. For `ChshStar`
/// (needs `n = 4`) it is the CHSH combination with identity roles,
/// maximized; the analytic optimum is 4.
pub fn violation_search(
    objective: StarInequality,
    n: usize,
    budget: usize,
    seed: u64,
) -> Result<SearchOutcome, SearchError> {
    let needs = objective.required_arity();
    if !needs.accepts(n) {
        return Err(SearchError::ArityMismatch { objective, needs, got: n });
    }
    if n > MAX_TERNARY_PROPOSITIONS {
        return Err(TernaryError::TooManyPropositions { n, max: MAX_TERNARY_PROPOSITIONS }.into());
    }
    if budget == 0 {
        return Err(SearchError::ZeroBudget);
    }

    let m = 3usize.pow(n as u32);
    let raw = RawObjective::build(objective, n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut current = simplex_weights(m, &mut rng);
    let mut current_score = raw.score(&current);
    let mut evaluations = 1usize;

    let mut best = current.clone();
    let mut best_score = current_score;

    let mut stall = 0usize;
    let mut restarts = 0usize;
    let mut accepted = 0usize;

    while evaluations < budget {
        if stall >= STALL_LIMIT {
            restarts += 1;
            current = if restarts % 2 == 1 {
                sparse_candidate(m, &mut rng)
            } else {
                simplex_weights(m, &mut rng)
            };
            current_score = raw.score(&current);
            evaluations += 1;
            stall = 0;
            if better(current_score, best_score) {
                best = current.clone();
                best_score = current_score;
            }
            continue;
        }

        let mut candidate = current.clone();
        propose_move(&mut candidate, n, m, &mut rng);
        let candidate_score = raw.score(&candidate);
        evaluations += 1;

        if better(candidate_score, current_score) {
            current = candidate;
            current_score = candidate_score;
            stall = 0;
            accepted += 1;
            if accepted % RENORMALIZE_EVERY == 0 {
                let sum: f64 = current.iter().sum();
                for x in &mut current {
                    *x /= sum;
                }
            }
            if better(current_score, best_score) {
                best = current.clone();
                best_score = current_score;
            }
        } else {
            stall += 1;
        }
    }

    let sum: f64 = best.iter().sum();
    for x in &mut best {
        *x /= sum;
    }
    let distribution = TernaryDistribution::new(n, best)?;
    let report = match objective {
        StarInequality::WdStar => ternary::wd_star(&distribution, 0, 1, 2)?,
        StarInequality::ChshStar => ChshScenario::new(distribution.clone())?.chsh_star()?,
    };
    Ok(SearchOutcome { objective, distribution, report, evaluations })
}

fn better(candidate: Option<f64>, incumbent: Option<f64>) -> bool {
    match (candidate, incumbent) {
        (Some(c), Some(i)) => c > i,
        (Some(_), None) => true,
        (None, _) => false,
    }
}

fn sparse_candidate<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Vec<f64> {
    let support = rng.random_range(1..=6usize.min(m));
    let mut cells = Vec::with_capacity(support);
    while cells.len() < support {
        let k = rng.random_range(0..m);
        if !cells.contains(&k) {
            cells.push(k);
        }
    }
    let masses = simplex_weights(support, rng);
    let mut w = vec![0.0; m];
    for (cell, mass) in cells.into_iter().zip(masses) {
        w[cell] = mass;
    }
    w
}

fn propose_move<R: Rng + ?Sized>(w: &mut [f64], n: usize, m: usize, rng: &mut R) {
    let fraction = TRANSFER_FRACTIONS[rng.random_range(0..TRANSFER_FRACTIONS.len())];
    if rng.random::<f64>() < 0.7 {
        // Cell transfer: move a fraction of one cell's mass to another.
        let mut src = rng.random_range(0..m);
        for _ in 0..32 {
            if w[src] > 1e-15 {
                break;
            }
            src = rng.random_range(0..m);
        }
        let mut dst = rng.random_range(0..m);
        while dst == src {
            dst = rng.random_range(0..m);
        }
        let delta = fraction * w[src];
        w[src] -= delta;
        w[dst] += delta;
    } else {
        // Digit shift: for one proposition, move a fraction of every cell
        // with digit `from` to the corresponding cell with digit `to`.
        let prop = rng.random_range(0..n);
        let from = rng.random_range(0..3usize);
        let mut to = rng.random_range(0..3usize);
        while to == from {
            to = rng.random_range(0..3usize);
        }
        let place = 3usize.pow((n - 1 - prop) as u32);
        let offset = to as isize - from as isize;
        for k in 0..m {
            if (k / place) % 3 == from {
                let target = (k as isize + offset * place as isize) as usize;
                let delta = fraction * w[k];
                w[k] -= delta;
                w[target] += delta;
            }
        }
    }
}
