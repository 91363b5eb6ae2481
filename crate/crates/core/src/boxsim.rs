//! Monte Carlo peg-board experiment with an observation channel.
//!
//! Each trial drops a ball through rows of pegs; at every row it deflects
//! right with that row's bias. The ball's final position decides a binary
//! outcome (right of center is fatal, ties land alive), and an observation
//! model decides independently per trial whether anyone gets to see it.
//! Unobserved trials are recorded but excluded from every estimator, so
//! what [`estimate_frequency`] measures is the conditional frequency
//! `[p] = P(alive and observed) / P(observed)`, not the plain `|p|`.
//!
//! When the observation channel ignores the outcome (always open, an
//! independent coin, or granular flashes) the two quantities coincide and
//! the simulation can only confirm it. The [`OpenModel::OutcomeCoupled`]
//! variant is the deliberately rigged box where seeing the outcome depends
//! on the outcome; there `[p]` and `|p|` split, and [`deviation_scan`]
//! reports the analytic values next to the empirical estimate so the gap is
//! attributable.
//!
//! # Determinism
//!
//! Trial `t` draws from stream `t` of a ChaCha8 generator seeded with the
//! config seed: one uniform per peg row (row order), then at most one
//! uniform for observability. Runs with the same config are bit-identical,
//! and extending `trials` preserves the existing prefix.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoxError {
    #[error("peg board needs at least one row")]
    ZeroDepth,
    #[error("peg_depth is {depth} but {got} row biases were given")]
    BiasCountMismatch { depth: usize, got: usize },
    #[error("probability {value} is outside [0, 1]")]
    BadProbability { value: f64 },
    #[error("flash rate {value} must be a positive finite number")]
    BadFlashRate { value: f64 },
    #[error("trial count must be at least 1")]
    ZeroTrials,
    #[error("no observable trials; the conditional estimate does not exist")]
    NoObservableTrials,
    #[error("deviation scan needs at least one point")]
    EmptySweep,
}

fn check_probability(value: f64) -> Result<f64, BoxError> {
    if !value.is_finite() || !(0.0..=1.0).contains(&value) {
        return Err(BoxError::BadProbability { value });
    }
    Ok(value)
}

/// Per-trial observability channel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum OpenModel {
    /// The box is never closed; every trial is observable.
    Always,
    /// Observability is an independent coin, blind to the outcome.
    Independent { open_prob: f64 },
    /// Discrete flashes of perception: a flash arrives with probability
    /// `1 - exp(-flash_rate)` per trial window, outcome-blind.
    Granular { flash_rate: f64 },
    /// The rigged box: observability probability depends on the outcome.
    /// This is the regime where the conditional frequency detaches from
    /// the unconditional one.
    OutcomeCoupled { open_if_alive: f64, open_if_dead: f64 },
}

impl OpenModel {
    fn validate(&self) -> Result<(), BoxError> {
        match self {
            OpenModel::Always => Ok(()),
            OpenModel::Independent { open_prob } => check_probability(*open_prob).map(|_| ()),
            OpenModel::Granular { flash_rate } => {
                if !flash_rate.is_finite() || *flash_rate <= 0.0 {
                    return Err(BoxError::BadFlashRate { value: *flash_rate });
                }
                Ok(())
            }
            OpenModel::OutcomeCoupled { open_if_alive, open_if_dead } => {
                check_probability(*open_if_alive)?;
                check_probability(*open_if_dead)?;
                Ok(())
            }
        }
    }

    /// Probability the trial is observable, given the outcome.
    fn open_probability(&self, alive: bool) -> f64 {
        match self {
            OpenModel::Always => 1.0,
            OpenModel::Independent { open_prob } => *open_prob,
            OpenModel::Granular { flash_rate } => 1.0 - (-flash_rate).exp(),
            OpenModel::OutcomeCoupled { open_if_alive, open_if_dead } => {
                if alive {
                    *open_if_alive
                } else {
                    *open_if_dead
                }
            }
        }
    }

    fn depends_on_outcome(&self) -> bool {
        matches!(self, OpenModel::OutcomeCoupled { .. })
    }
}

/// Validated experiment description. Deserialization revalidates, so a
/// config parsed from JSON is as trustworthy as one built in code.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawConfig")]
pub struct BoxExperimentConfig {
    peg_depth: usize,
    right_bias: Vec<f64>,
    open_model: OpenModel,
    trials: u64,
    seed: u64,
}

#[derive(Deserialize)]
struct RawConfig {
    peg_depth: usize,
    right_bias: Vec<f64>,
    open_model: OpenModel,
    trials: u64,
    seed: u64,
}

impl TryFrom<RawConfig> for BoxExperimentConfig {
    type Error = BoxError;

    fn try_from(raw: RawConfig) -> Result<Self, BoxError> {
        BoxExperimentConfig::new(raw.peg_depth, raw.right_bias, raw.open_model, raw.trials, raw.seed)
    }
}

impl BoxExperimentConfig {
    pub fn new(
        peg_depth: usize,
        right_bias: Vec<f64>,
        open_model: OpenModel,
        trials: u64,
        seed: u64,
    ) -> Result<Self, BoxError> {
        if peg_depth == 0 {
            return Err(BoxError::ZeroDepth);
        }
        if right_bias.len() != peg_depth {
            return Err(BoxError::BiasCountMismatch { depth: peg_depth, got: right_bias.len() });
        }
        for &bias in &right_bias {
            check_probability(bias)?;
        }
        open_model.validate()?;
        if trials == 0 {
            return Err(BoxError::ZeroTrials);
        }
        Ok(BoxExperimentConfig { peg_depth, right_bias, open_model, trials, seed })
    }

    /// Same board and budget, different observation channel.
    pub fn with_open_model(&self, open_model: OpenModel) -> Result<Self, BoxError> {
        BoxExperimentConfig::new(
            self.peg_depth,
            self.right_bias.clone(),
            open_model,
            self.trials,
            self.seed,
        )
    }

    pub fn peg_depth(&self) -> usize {
        self.peg_depth
    }

    pub fn right_bias(&self) -> &[f64] {
        &self.right_bias
    }

    pub fn open_model(&self) -> &OpenModel {
        &self.open_model
    }

    pub fn trials(&self) -> u64 {
        self.trials
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Exact unconditional alive probability `|p|`, by dynamic programming
    /// over the right-deflection count (the rows may have unequal biases).
    /// Alive means at most half the rows deflected right.
    pub fn analytic_alive_probability(&self) -> f64 {
        let mut rights = vec![1.0f64];
        for &bias in &self.right_bias {
            let mut next = vec![0.0; rights.len() + 1];
            for (k, &w) in rights.iter().enumerate() {
                next[k] += w * (1.0 - bias);
                next[k + 1] += w * bias;
            }
            rights = next;
        }
        rights
            .iter()
            .enumerate()
            .filter(|(k, _)| 2 * k <= self.peg_depth)
            .map(|(_, &w)| w)
            .sum()
    }

    /// Exact conditional frequency `[p]` under this observation channel, or
    /// `None` when nothing is ever observable. Outcome-blind channels give
    /// exactly the unconditional probability back.
    pub fn analytic_conditional_frequency(&self) -> Option<f64> {
        let alive = self.analytic_alive_probability();
        if !self.open_model.depends_on_outcome() {
            return if self.open_model.open_probability(true) > 0.0 { Some(alive) } else { None };
        }
        let seen_alive = alive * self.open_model.open_probability(true);
        let seen_dead = (1.0 - alive) * self.open_model.open_probability(false);
        let seen = seen_alive + seen_dead;
        if seen == 0.0 {
            return None;
        }
        Some(seen_alive / seen)
    }
}

/// One trial: the outcome and whether anyone saw it. Unobservable trials
/// exist in the record stream but are invisible to every estimator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub alive: bool,
    pub observable: bool,
}

/// Runs the experiment. Deterministic in the config; see the module docs
/// for the per-trial stream layout.
pub fn simulate(config: &BoxExperimentConfig) -> Vec<TrialRecord> {
    let base = ChaCha8Rng::seed_from_u64(config.seed);
    (0..config.trials)
        .map(|t| {
            let mut rng = base.clone();
            rng.set_stream(t);
            let mut rights = 0usize;
            for &bias in &config.right_bias {
                if rng.random::<f64>() < bias {
                    rights += 1;
                }
            }
            let alive = 2 * rights <= config.peg_depth;
            let observable = match &config.open_model {
                OpenModel::Always => true,
                model => rng.random::<f64>() < model.open_probability(alive),
            };
            TrialRecord { alive, observable }
        })
        .collect()
}

/// Conditional frequency estimate over the observable trials.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrequencyEstimate {
    /// Observable and alive.
    pub numerator: u64,
    /// Observable.
    pub denominator: u64,
    pub estimate: f64,
    /// Binomial standard error `sqrt(estimate (1 - estimate) / denominator)`.
    pub stderr: f64,
}

pub fn estimate_frequency(records: &[TrialRecord]) -> Result<FrequencyEstimate, BoxError> {
    let denominator = records.iter().filter(|r| r.observable).count() as u64;
    if denominator == 0 {
        return Err(BoxError::NoObservableTrials);
    }
    let numerator = records.iter().filter(|r| r.observable && r.alive).count() as u64;
    let estimate = numerator as f64 / denominator as f64;
    let stderr = (estimate * (1.0 - estimate) / denominator as f64).sqrt();
    Ok(FrequencyEstimate { numerator, denominator, estimate, stderr })
}

/// One configuration to compare against the shared base board.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanPoint {
    /// Identifier carried into the report's `config-id` column.
    pub label: String,
    pub open_model: OpenModel,
}

/// Report row for one scan point. `estimate`, `stderr`, and `gap` are
/// absent when no trial was observable; `analytic_bracket_p` is absent when
/// the channel makes observation impossible.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub config_id: String,
    pub trials: u64,
    pub observable_count: u64,
    pub estimate: Option<f64>,
    pub stderr: Option<f64>,
    /// Unconditional alive probability `|p|`, exact.
    pub analytic_p: f64,
    /// Conditional frequency `[p]`, exact.
    pub analytic_bracket_p: Option<f64>,
    /// `estimate - analytic_bracket_p`.
    pub gap: Option<f64>,
}

/// Runs the base board under each observation channel in the sweep and
/// lines the empirical estimates up against the exact `|p|` and `[p]`.
/// Every point reuses the base seed, so the deflection half of each trial's
/// stream is literally the same draw across the sweep; only the
/// observability draw responds to the channel.
pub fn deviation_scan(
    base: &BoxExperimentConfig,
    points: &[ScanPoint],
) -> Result<Vec<ScanRow>, BoxError> {
    if points.is_empty() {
        return Err(BoxError::EmptySweep);
    }
    points
        .iter()
        .map(|point| {
            let config = base.with_open_model(point.open_model.clone())?;
            let records = simulate(&config);
            let analytic_p = config.analytic_alive_probability();
            let analytic_bracket_p = config.analytic_conditional_frequency();
            let row = match estimate_frequency(&records) {
                Ok(e) => ScanRow {
                    config_id: point.label.clone(),
                    trials: config.trials,
                    observable_count: e.denominator,
                    estimate: Some(e.estimate),
                    stderr: Some(e.stderr),
                    analytic_p,
                    analytic_bracket_p,
                    gap: analytic_bracket_p.map(|b| e.estimate - b),
                },
                Err(BoxError::NoObservableTrials) => ScanRow {
                    config_id: point.label.clone(),
                    trials: config.trials,
                    observable_count: 0,
                    estimate: None,
                    stderr: None,
                    analytic_p,
                    analytic_bracket_p,
                    gap: None,
                },
                Err(other) => return Err(other),
            };
            Ok(row)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(bias: &[f64], open: OpenModel, trials: u64, seed: u64) -> BoxExperimentConfig {
        BoxExperimentConfig::new(bias.len(), bias.to_vec(), open, trials, seed).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(matches!(
            BoxExperimentConfig::new(0, vec![], OpenModel::Always, 10, 0),
            Err(BoxError::ZeroDepth)
        ));
        assert!(matches!(
            BoxExperimentConfig::new(2, vec![0.5], OpenModel::Always, 10, 0),
            Err(BoxError::BiasCountMismatch { depth: 2, got: 1 })
        ));
        assert!(matches!(
            BoxExperimentConfig::new(1, vec![1.5], OpenModel::Always, 10, 0),
            Err(BoxError::BadProbability { .. })
        ));
        assert!(matches!(
            BoxExperimentConfig::new(1, vec![0.5], OpenModel::Independent { open_prob: -0.2 }, 10, 0),
            Err(BoxError::BadProbability { .. })
        ));
        assert!(matches!(
            BoxExperimentConfig::new(1, vec![0.5], OpenModel::Granular { flash_rate: 0.0 }, 10, 0),
            Err(BoxError::BadFlashRate { .. })
        ));
        assert!(matches!(
            BoxExperimentConfig::new(1, vec![0.5], OpenModel::Always, 0, 0),
            Err(BoxError::ZeroTrials)
        ));
    }

    #[test]
    fn deserialization_revalidates() {
        let good = r#"{"peg_depth":2,"right_bias":[0.5,0.25],
            "open_model":{"type":"outcome-coupled","open_if_alive":0.9,"open_if_dead":0.1},
            "trials":100,"seed":7}"#;
        let parsed: BoxExperimentConfig = serde_json::from_str(good).unwrap();
        assert_eq!(parsed.peg_depth(), 2);

        let bad = r#"{"peg_depth":2,"right_bias":[0.5],
            "open_model":{"type":"always"},"trials":100,"seed":7}"#;
        assert!(serde_json::from_str::<BoxExperimentConfig>(bad).is_err());
    }

    #[test]
    fn analytic_alive_probability_examples() {
        assert_eq!(config(&[0.5, 0.5], OpenModel::Always, 1, 0).analytic_alive_probability(), 0.75);
        assert_eq!(config(&[1.0, 1.0], OpenModel::Always, 1, 0).analytic_alive_probability(), 0.0);
        assert_eq!(
            config(&[0.0, 0.0, 0.0], OpenModel::Always, 1, 0).analytic_alive_probability(),
            1.0
        );
        // Odd depth with fair pegs has no ties, so the rule is symmetric.
        let fair = config(&[0.5, 0.5, 0.5], OpenModel::Always, 1, 0);
        assert!((fair.analytic_alive_probability() - 0.5).abs() < 1e-15);
        // Unequal rows: alive iff at most one of {0.2, 0.7} deflects right.
        let uneven = config(&[0.2, 0.7], OpenModel::Always, 1, 0);
        assert!((uneven.analytic_alive_probability() - (1.0 - 0.2 * 0.7)).abs() < 1e-15);
    }

    #[test]
    fn analytic_conditional_frequency_per_model() {
        let base = config(&[0.5], OpenModel::Always, 1, 0);
        assert_eq!(base.analytic_conditional_frequency(), Some(0.5));
        assert_eq!(
            base.with_open_model(OpenModel::Independent { open_prob: 0.3 })
                .unwrap()
                .analytic_conditional_frequency(),
            Some(0.5)
        );
        assert_eq!(
            base.with_open_model(OpenModel::Independent { open_prob: 0.0 })
                .unwrap()
                .analytic_conditional_frequency(),
            None
        );
        assert_eq!(
            base.with_open_model(OpenModel::Granular { flash_rate: 2.0 })
                .unwrap()
                .analytic_conditional_frequency(),
            Some(0.5)
        );
        let coupled = base
            .with_open_model(OpenModel::OutcomeCoupled { open_if_alive: 0.9, open_if_dead: 0.1 })
            .unwrap();
        let expected = 0.45 / (0.45 + 0.05);
        assert!((coupled.analytic_conditional_frequency().unwrap() - expected).abs() < 1e-15);
        assert!((expected - 0.9).abs() < 1e-15);

        let dead_box = base
            .with_open_model(OpenModel::OutcomeCoupled { open_if_alive: 0.0, open_if_dead: 0.0 })
            .unwrap();
        assert_eq!(dead_box.analytic_conditional_frequency(), None);
    }

    #[test]
    fn identical_configs_reproduce_bit_identical_records() {
        let c = config(&[0.3, 0.6], OpenModel::Independent { open_prob: 0.4 }, 500, 99);
        assert_eq!(simulate(&c), simulate(&c));
    }

    #[test]
    fn extending_the_run_preserves_the_prefix() {
        let short = config(&[0.5, 0.5], OpenModel::Granular { flash_rate: 1.0 }, 20, 11);
        let long = config(&[0.5, 0.5], OpenModel::Granular { flash_rate: 1.0 }, 100, 11);
        assert_eq!(simulate(&long)[..20], simulate(&short)[..]);
    }

    #[test]
    fn hand_built_records_count_only_observable_trials() {
        let records = [
            TrialRecord { alive: true, observable: true },
            TrialRecord { alive: false, observable: true },
            TrialRecord { alive: true, observable: false },
        ];
        let e = estimate_frequency(&records).unwrap();
        assert_eq!(e.numerator, 1);
        assert_eq!(e.denominator, 2);
        assert_eq!(e.estimate, 0.5);
        assert!((e.stderr - (0.25f64 / 2.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn sealed_box_yields_no_estimate() {
        let c = config(&[0.5], OpenModel::Independent { open_prob: 0.0 }, 1000, 5);
        let records = simulate(&c);
        assert!(records.iter().all(|r| !r.observable));
        assert!(matches!(estimate_frequency(&records), Err(BoxError::NoObservableTrials)));
    }

    #[test]
    fn single_fair_peg_matches_the_coin() {
        let c = config(&[0.5], OpenModel::Always, 1_000_000, 42);
        let e = estimate_frequency(&simulate(&c)).unwrap();
        assert_eq!(e.denominator, 1_000_000);
        assert!((e.estimate - 0.5).abs() <= 3.0 * e.stderr);
    }

    #[test]
    fn estimates_converge_at_the_binomial_rate() {
        for trials in [1_000u64, 10_000, 100_000] {
            let c = config(&[0.5, 0.5], OpenModel::Independent { open_prob: 0.5 }, trials, 8);
            let e = estimate_frequency(&simulate(&c)).unwrap();
            let analytic = c.analytic_conditional_frequency().unwrap();
            assert!(
                (e.estimate - analytic).abs() <= 3.0 * e.stderr,
                "trials {trials}: estimate {} vs analytic {analytic} (stderr {})",
                e.estimate,
                e.stderr
            );
        }
    }

    #[test]
    fn outcome_blind_channel_matches_the_unconditional_fraction() {
        let c = config(&[0.4, 0.7], OpenModel::Independent { open_prob: 0.6 }, 200_000, 13);
        let records = simulate(&c);
        let conditional = estimate_frequency(&records).unwrap();
        let alive = records.iter().filter(|r| r.alive).count() as f64 / records.len() as f64;
        let alive_stderr = (alive * (1.0 - alive) / records.len() as f64).sqrt();
        let combined = (conditional.stderr.powi(2) + alive_stderr.powi(2)).sqrt();
        assert!((conditional.estimate - alive).abs() <= 3.0 * combined);
    }

    #[test]
    fn rigged_box_shifts_the_conditional_frequency() {
        let c = config(
            &[0.5],
            OpenModel::OutcomeCoupled { open_if_alive: 0.9, open_if_dead: 0.1 },
            1_000_000,
            21,
        );
        let e = estimate_frequency(&simulate(&c)).unwrap();
        assert!((e.estimate - 0.9).abs() <= 3.0 * e.stderr);
        // The unconditional probability is still one half; the channel only
        // bends what gets seen.
        assert_eq!(c.analytic_alive_probability(), 0.5);
    }

    #[test]
    fn deviation_scan_reports_gaps_and_absences() {
        let base = config(&[0.5, 0.5], OpenModel::Always, 200_000, 17);
        let rows = deviation_scan(
            &base,
            &[
                ScanPoint {
                    label: "independent-half".into(),
                    open_model: OpenModel::Independent { open_prob: 0.5 },
                },
                ScanPoint {
                    label: "coupled-9-1".into(),
                    open_model: OpenModel::OutcomeCoupled {
                        open_if_alive: 0.9,
                        open_if_dead: 0.1,
                    },
                },
                ScanPoint {
                    label: "sealed".into(),
                    open_model: OpenModel::Independent { open_prob: 0.0 },
                },
                ScanPoint {
                    label: "bright-flashes".into(),
                    open_model: OpenModel::Granular { flash_rate: 10.0 },
                },
            ],
        )
        .unwrap();

        let independent = &rows[0];
        assert_eq!(independent.analytic_p, 0.75);
        assert_eq!(independent.analytic_bracket_p, Some(0.75));
        assert!(independent.gap.unwrap().abs() <= 3.0 * independent.stderr.unwrap());

        let coupled = &rows[1];
        let expected = 0.75 * 0.9 / (0.75 * 0.9 + 0.25 * 0.1);
        assert!((coupled.analytic_bracket_p.unwrap() - expected).abs() < 1e-15);
        assert!(coupled.gap.unwrap().abs() <= 3.0 * coupled.stderr.unwrap());
        // The interesting number: conditioning moved the target away from |p|.
        assert!((coupled.analytic_bracket_p.unwrap() - coupled.analytic_p).abs() > 0.2);

        let sealed = &rows[2];
        assert_eq!(sealed.observable_count, 0);
        assert_eq!(sealed.estimate, None);
        assert_eq!(sealed.analytic_bracket_p, None);
        assert_eq!(sealed.gap, None);

        let granular = &rows[3];
        assert_eq!(granular.analytic_bracket_p, Some(0.75));
        assert!(granular.observable_count > 199_000);
        assert!(granular.gap.unwrap().abs() <= 3.0 * granular.stderr.unwrap());
    }

    #[test]
    fn scan_requires_points() {
        let base = config(&[0.5], OpenModel::Always, 10, 0);
        assert!(matches!(deviation_scan(&base, &[]), Err(BoxError::EmptySweep)));
    }
}
