//! Report rendering. JSON is the default: a small envelope naming the
//! command (and the seed when one was consumed) around the typed result.
//! CSV is the plot-ready alternative: one header plus one row per record,
//! floats at 17 significant digits with '.' as the decimal separator, empty
//! fields for absent values. Both formats are byte-deterministic for a
//! fixed config and seed.

use clap::ValueEnum;
use obsfreq_core::boxsim::ScanRow;
use obsfreq_core::inequality::{Certificate, Verdict};
use obsfreq_core::InequalityReport;
use serde::Serialize;

use crate::commands::{CommandReport, EmbedReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Serialize)]
struct Envelope<T: Serialize> {
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    result: T,
}

pub fn render(report: &CommandReport, seed: Option<u64>, format: Format) -> String {
    match format {
        Format::Json => render_json(report, seed),
        Format::Csv => render_csv(report),
    }
}

fn command_name(report: &CommandReport) -> &'static str {
    match report {
        CommandReport::Inequality(_) => "inequality",
        CommandReport::Search(_) => "search",
        CommandReport::Embed(_) => "embed",
        CommandReport::Simulate(_) => "simulate",
        CommandReport::Certify(_) => "certify",
    }
}

fn render_json(report: &CommandReport, seed: Option<u64>) -> String {
    let command = command_name(report);
    let body = match report {
        CommandReport::Inequality(r) => pretty(&Envelope { command, seed, result: r }),
        CommandReport::Search(r) => pretty(&Envelope { command, seed, result: r }),
        CommandReport::Embed(r) => pretty(&Envelope { command, seed, result: r }),
        CommandReport::Simulate(r) => pretty(&Envelope { command, seed, result: r }),
        CommandReport::Certify(r) => pretty(&Envelope { command, seed, result: r }),
    };
    body + "\n"
}

fn pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports contain only serializable primitives")
}

/// 17 significant digits; enough to reproduce any f64 exactly.
fn float17(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt_float17(x: Option<f64>) -> String {
    x.map(float17).unwrap_or_default()
}

/// Minimal CSV quoting: only fields containing a delimiter, quote, or
/// newline get wrapped.
fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn render_csv(report: &CommandReport) -> String {
    match report {
        CommandReport::Inequality(r) => inequality_csv(r),
        CommandReport::Search(r) => {
            let mut out = String::from("objective,propositions,evaluations,lhs,bound,margin,violated\n");
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.objective,
                r.distribution.proposition_count(),
                r.evaluations,
                float17(r.report.lhs),
                float17(r.report.bound),
                float17(r.report.margin),
                r.report.violated,
            ));
            out
        }
        CommandReport::Embed(r) => embed_csv(r),
        CommandReport::Simulate(rows) => scan_csv(rows),
        CommandReport::Certify(c) => certify_csv(c),
    }
}

fn inequality_csv(r: &InequalityReport) -> String {
    let mut out = String::from("name,lhs,bound,margin,violated,witness\n");
    out.push_str(&format!(
        "{},{},{},{},{},{}\n",
        csv_field(&r.name),
        float17(r.lhs),
        float17(r.bound),
        float17(r.margin),
        r.violated,
        csv_field(r.witness.as_deref().unwrap_or("")),
    ));
    out
}

fn embed_csv(r: &EmbedReport) -> String {
    let mut out = String::from(
        "p-true,p-false,p-unobservable,phi,theta,a0,a1-re,a1-im,restored-frequency,measurable-frequency\n",
    );
    out.push_str(&format!(
        "{},{},{},{},{},{},{},{},{},{}\n",
        float17(r.p_true),
        float17(r.p_false),
        float17(r.p_unobservable),
        float17(r.phi),
        float17(r.theta),
        float17(r.a0),
        float17(r.a1_re),
        float17(r.a1_im),
        float17(r.restored_frequency),
        float17(r.measurable_frequency),
    ));
    out
}

fn scan_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from(
        "config-id,trials,observable-count,estimate,stderr,analytic-p,analytic-bracket-p,gap\n",
    );
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            csv_field(&row.config_id),
            row.trials,
            row.observable_count,
            opt_float17(row.estimate),
            opt_float17(row.stderr),
            float17(row.analytic_p),
            opt_float17(row.analytic_bracket_p),
            opt_float17(row.gap),
        ));
    }
    out
}

fn certify_csv(c: &Certificate) -> String {
    let verdict = match c.verdict {
        Verdict::Classical => "classical",
        Verdict::Contextual => "contextual",
    };
    let mut out =
        String::from("verdict,permutations-checked,permutations-undefined,violation-name,violation-margin\n");
    out.push_str(&format!(
        "{},{},{},{},{}\n",
        verdict,
        c.permutations_checked,
        c.permutations_undefined,
        csv_field(c.violation.as_ref().map(|v| v.name.as_str()).unwrap_or("")),
        opt_float17(c.violation.as_ref().map(|v| v.margin)),
    ));
    out
}
