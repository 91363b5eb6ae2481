//! Experiment config: one self-describing JSON document per run.
//!
//! The top level carries the command name, a command-specific parameter
//! object, and optional `output_path` and `seed`. Parameter shapes are
//! enforced by typed deserialization with unknown fields rejected; the
//! shipped `schema/experiment-config.schema.json` documents the same
//! contract for humans and external validators. Shape problems are schema
//! violations (exit 2). Values that parse but fail a library invariant
//! (a weight vector off the simplex, a zero-row peg board) surface later
//! as experiment errors (exit 3).

use obsfreq_core::boxsim::{OpenModel, ScanPoint};
use obsfreq_core::StarInequality;
use serde::Deserialize;
use std::path::PathBuf;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub command: String,
    pub parameters: serde_json::Value,
    #[serde(default)]
    pub output_path: Option<PathBuf>,
    #[serde(default)]
    pub seed: Option<u64>,
}

/// Parsed command with typed parameters. The `command` string picks the
/// variant; `parameters` must then deserialize exactly.
#[derive(Debug)]
pub enum Experiment {
    Inequality(InequalityParams),
    Search(SearchParams),
    Embed(EmbedParams),
    Simulate(SimulateParams),
    Certify(CertifyParams),
}

pub const COMMAND_NAMES: [&str; 5] = ["inequality", "search", "embed", "simulate", "certify"];

impl Experiment {
    pub fn from_spec(spec: &ExperimentSpec) -> Result<Self, String> {
        let p = spec.parameters.clone();
        let parsed = match spec.command.as_str() {
            "inequality" => serde_json::from_value(p).map(Experiment::Inequality),
            "search" => serde_json::from_value(p).map(Experiment::Search),
            "embed" => serde_json::from_value(p).map(Experiment::Embed),
            "simulate" => serde_json::from_value(p).map(Experiment::Simulate),
            "certify" => serde_json::from_value(p).map(Experiment::Certify),
            other => {
                return Err(format!(
                    "unknown command {other:?}; expected one of {COMMAND_NAMES:?}"
                ))
            }
        };
        parsed.map_err(|e| format!("invalid parameters for {:?}: {e}", spec.command))
    }
}

/// Which inequality to evaluate. The unstarred name takes a classical
/// distribution; the starred ones take ternary distributions or fixtures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InequalityKind {
    WignerDespagnat,
    WdStar,
    ChshStar,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InequalityParams {
    pub inequality: InequalityKind,
    pub distribution: DistributionParam,
    /// Proposition triple (a, b, c) for the Wigner-d'Espagnat forms.
    #[serde(default)]
    pub propositions: Option<[usize; 3]>,
    /// Role permutation (A1, A2, B1, B2) for CHSH.
    #[serde(default)]
    pub roles: Option<[usize; 4]>,
}

/// A distribution literal or the name of a shipped witness fixture.
#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistributionParam {
    Classical { propositions: usize, weights: Vec<f64> },
    Ternary { propositions: usize, weights: Vec<f64> },
    Fixture(FixtureName),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FixtureName {
    /// Point mass on (T, U, T); the maximal starred Wigner-d'Espagnat
    /// violator, margin -1.
    WdStarPointMass,
    /// Four-cell mixture over four propositions reaching post-selected
    /// CHSH value 4.
    ChshMaxMixture,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchParams {
    pub objective: StarInequality,
    pub propositions: usize,
    pub budget: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbedParams {
    pub p_true: f64,
    pub p_false: f64,
    pub p_unobservable: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateParams {
    pub peg_depth: usize,
    pub right_bias: Vec<f64>,
    pub open_model: OpenModel,
    pub trials: u64,
    /// Extra observation channels to sweep on the same board and seed.
    /// Absent means a single run of `open_model`, reported as one row
    /// labeled `base`.
    #[serde(default)]
    pub scan: Option<Vec<ScanPoint>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertifyParams {
    pub distribution: DistributionParam,
    pub inequalities: Vec<StarInequality>,
}
