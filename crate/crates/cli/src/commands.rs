//! Dispatch from parsed parameters to the library, and the failure type
//! that carries exit codes and the machine-readable error object.

use obsfreq_core::boxsim::{self, BoxExperimentConfig, ScanPoint, ScanRow};
use obsfreq_core::classical::{self, JointDistribution};
use obsfreq_core::complex::{bloch_project, restored_born, SphereDirection};
use obsfreq_core::inequality::{certify, chsh_maximal_mixture, Certificate, ChshScenario};
use obsfreq_core::ternary::{self, wd_maximal_violator, TernaryDistribution};
use obsfreq_core::{violation_search, InequalityReport, SearchOutcome};
use serde::Serialize;

use crate::config::{
    CertifyParams, DistributionParam, EmbedParams, Experiment, FixtureName, InequalityKind,
    InequalityParams, SearchParams, SimulateParams,
};

/// A run failure with its exit code and the JSON error object printed to
/// stderr: `{"module": ..., "case": ..., "message": ...}`.
#[derive(Debug)]
pub enum RunFailure {
    /// Exit 2: the config does not match the documented shape.
    Schema { message: String },
    /// Exit 3: a library module rejected the experiment; `case` is the
    /// error variant name, preserved verbatim.
    Experiment { module: &'static str, case: String, message: String },
    /// Exit 4: reading the config or writing the output failed.
    Io { message: String },
}

#[derive(Serialize)]
pub struct ErrorObject<'a> {
    pub module: &'a str,
    pub case: &'a str,
    pub message: &'a str,
}

impl RunFailure {
    pub fn exit_code(&self) -> u8 {
        match self {
            RunFailure::Schema { .. } => 2,
            RunFailure::Experiment { .. } => 3,
            RunFailure::Io { .. } => 4,
        }
    }

    pub fn object(&self) -> ErrorObject<'_> {
        match self {
            RunFailure::Schema { message } => {
                ErrorObject { module: "cli", case: "SchemaViolation", message }
            }
            RunFailure::Experiment { module, case, message } => {
                ErrorObject { module, case, message }
            }
            RunFailure::Io { message } => ErrorObject { module: "cli", case: "IoError", message },
        }
    }
}

/// Wraps a module error, keeping the variant name as the machine-readable
/// case: the text before the first payload brace of the Debug form.
pub fn experiment_error<E: std::fmt::Debug + std::fmt::Display>(
    module: &'static str,
    error: E,
) -> RunFailure {
    let debug = format!("{error:?}");
    let case = debug.split([' ', '{', '(']).next().unwrap_or("Unknown").to_string();
    RunFailure::Experiment { module, case, message: error.to_string() }
}

/// Typed result of one run; the output module turns it into JSON or CSV.
pub enum CommandReport {
    Inequality(InequalityReport),
    Search(SearchOutcome),
    Embed(EmbedReport),
    Simulate(Vec<ScanRow>),
    Certify(Certificate),
}

#[derive(Debug, Serialize)]
pub struct EmbedReport {
    pub p_true: f64,
    pub p_false: f64,
    pub p_unobservable: f64,
    /// TF-angle of the projected state.
    pub phi: f64,
    /// Phase angle carrying the unobservable weight.
    pub theta: f64,
    pub a0: f64,
    pub a1_re: f64,
    pub a1_im: f64,
    /// Born value of diag(1, 0) on the projected state.
    pub restored_frequency: f64,
    /// Directly computed pT / (pT + pF); equal within 1e-12.
    pub measurable_frequency: f64,
}

pub fn execute(experiment: &Experiment, seed: u64) -> Result<CommandReport, RunFailure> {
    match experiment {
        Experiment::Inequality(p) => run_inequality(p),
        Experiment::Search(p) => run_search(p, seed),
        Experiment::Embed(p) => run_embed(p),
        Experiment::Simulate(p) => run_simulate(p, seed),
        Experiment::Certify(p) => run_certify(p),
    }
}

/// Whether the command consumes the effective seed; reports echo the seed
/// only when it mattered.
pub fn uses_seed(experiment: &Experiment) -> bool {
    matches!(experiment, Experiment::Search(_) | Experiment::Simulate(_))
}

fn classical_distribution(param: &DistributionParam) -> Result<JointDistribution, RunFailure> {
    match param {
        DistributionParam::Classical { propositions, weights } => {
            JointDistribution::new(*propositions, weights.clone())
                .map_err(|e| experiment_error("classical", e))
        }
        DistributionParam::Ternary { .. } | DistributionParam::Fixture(_) => {
            Err(RunFailure::Schema {
                message: "this inequality takes a classical distribution, not a ternary one"
                    .into(),
            })
        }
    }
}

fn ternary_distribution(param: &DistributionParam) -> Result<TernaryDistribution, RunFailure> {
    match param {
        DistributionParam::Ternary { propositions, weights } => {
            TernaryDistribution::new(*propositions, weights.clone())
                .map_err(|e| experiment_error("ternary", e))
        }
        DistributionParam::Fixture(FixtureName::WdStarPointMass) => Ok(wd_maximal_violator()),
        DistributionParam::Fixture(FixtureName::ChshMaxMixture) => Ok(chsh_maximal_mixture()),
        DistributionParam::Classical { .. } => Err(RunFailure::Schema {
            message: "this inequality takes a ternary distribution or fixture, not a classical one"
                .into(),
        }),
    }
}

fn run_inequality(params: &InequalityParams) -> Result<CommandReport, RunFailure> {
    let [a, b, c] = params.propositions.unwrap_or([0, 1, 2]);
    let report = match params.inequality {
        InequalityKind::WignerDespagnat => {
            let d = classical_distribution(&params.distribution)?;
            classical::wd_classical(&d, a, b, c).map_err(|e| experiment_error("classical", e))?
        }
        InequalityKind::WdStar => {
            let d = ternary_distribution(&params.distribution)?;
            ternary::wd_star(&d, a, b, c).map_err(|e| experiment_error("ternary", e))?
        }
        InequalityKind::ChshStar => {
            let d = ternary_distribution(&params.distribution)?;
            let roles = params.roles.unwrap_or([0, 1, 2, 3]);
            ChshScenario::with_roles(d, roles)
                .and_then(|scenario| scenario.chsh_star())
                .map_err(|e| experiment_error("inequality", e))?
        }
    };
    Ok(CommandReport::Inequality(report))
}

fn run_search(params: &SearchParams, seed: u64) -> Result<CommandReport, RunFailure> {
    violation_search(params.objective, params.propositions, params.budget, seed)
        .map(CommandReport::Search)
        .map_err(|e| experiment_error("search", e))
}

fn run_embed(params: &EmbedParams) -> Result<CommandReport, RunFailure> {
    let direction = SphereDirection::new(params.p_true, params.p_false, params.p_unobservable)
        .map_err(|e| experiment_error("complex", e))?;
    let qubit = bloch_project(&direction).map_err(|e| experiment_error("complex", e))?;
    let measurable = direction.measurable_frequency().map_err(|e| experiment_error("complex", e))?;
    Ok(CommandReport::Embed(EmbedReport {
        p_true: direction.p_true(),
        p_false: direction.p_false(),
        p_unobservable: direction.p_unobservable(),
        phi: qubit.phi(),
        theta: qubit.theta(),
        a0: qubit.a0(),
        a1_re: qubit.a1().re,
        a1_im: qubit.a1().im,
        restored_frequency: restored_born(&qubit),
        measurable_frequency: measurable,
    }))
}

fn run_simulate(params: &SimulateParams, seed: u64) -> Result<CommandReport, RunFailure> {
    let config = BoxExperimentConfig::new(
        params.peg_depth,
        params.right_bias.clone(),
        params.open_model.clone(),
        params.trials,
        seed,
    )
    .map_err(|e| experiment_error("boxsim", e))?;
    let points = match &params.scan {
        Some(points) => points.clone(),
        None => vec![ScanPoint { label: "base".into(), open_model: params.open_model.clone() }],
    };
    boxsim::deviation_scan(&config, &points)
        .map(CommandReport::Simulate)
        .map_err(|e| experiment_error("boxsim", e))
}

fn run_certify(params: &CertifyParams) -> Result<CommandReport, RunFailure> {
    let d = ternary_distribution(&params.distribution)?;
    certify(&d, &params.inequalities)
        .map(CommandReport::Certify)
        .map_err(|e| experiment_error("inequality", e))
}
