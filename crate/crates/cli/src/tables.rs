//! Reference tables: the displayed objects of the two algebras, generated
//! from the library (never hardcoded) and written one JSON file per object.

use std::fs;
use std::path::{Path, PathBuf};

use obsfreq_core::classical::assignment_of;
use obsfreq_core::inequality::chsh_maximal_mixture;
use obsfreq_core::operator::{binary_projector, observability_operators};
use obsfreq_core::ternary::{outcomes_of, wd_maximal_violator};
use obsfreq_core::TernaryDistribution;
use serde::Serialize;

use crate::commands::RunFailure;

fn binary_labels(n: usize) -> Vec<String> {
    (0..1usize << n)
        .map(|k| assignment_of(k, n).iter().map(|&b| if b { 'T' } else { 'F' }).collect())
        .collect()
}

fn ternary_labels(n: usize) -> Vec<String> {
    (0..3usize.pow(n as u32))
        .map(|k| outcomes_of(k, n).iter().map(|o| o.symbol()).collect())
        .collect()
}

#[derive(Serialize)]
struct TruthTable {
    description: &'static str,
    basis: Vec<String>,
    rows: Vec<TruthRow>,
}

#[derive(Serialize)]
struct TruthRow {
    p0: char,
    p1: char,
}

#[derive(Serialize)]
struct BinaryProjectors {
    description: &'static str,
    basis: Vec<String>,
    p0_true_diagonal: Vec<f64>,
    p1_true_diagonal: Vec<f64>,
}

#[derive(Serialize)]
struct ObservabilityProjectors {
    description: &'static str,
    basis: Vec<String>,
    proposition: usize,
    truth_diagonal: Vec<f64>,
    observability_diagonal: Vec<f64>,
}

#[derive(Serialize)]
struct WitnessTable {
    description: &'static str,
    propositions: usize,
    basis: Vec<String>,
    weights: Vec<f64>,
    support: Vec<SupportCell>,
}

#[derive(Serialize)]
struct SupportCell {
    cell: String,
    weight: f64,
}

fn witness_table(description: &'static str, d: &TernaryDistribution) -> WitnessTable {
    let n = d.proposition_count();
    let basis = ternary_labels(n);
    let support = d
        .weights()
        .iter()
        .enumerate()
        .filter(|(_, &w)| w > 0.0)
        .map(|(k, &w)| SupportCell { cell: basis[k].clone(), weight: w })
        .collect();
    WitnessTable {
        description,
        propositions: n,
        basis,
        weights: d.weights().to_vec(),
        support,
    }
}

/// Writes the five reference files into `output_dir` (created if missing)
/// and returns their paths in write order.
pub fn emit(output_dir: &Path) -> Result<Vec<PathBuf>, RunFailure> {
    fs::create_dir_all(output_dir).map_err(|e| RunFailure::Io {
        message: format!("cannot create {}: {e}", output_dir.display()),
    })?;

    let truth_table = TruthTable {
        description: "closure of a two-proposition binary context: every cell carries a definite truth value for both propositions",
        basis: binary_labels(2),
        rows: vec![
            TruthRow { p0: 'T', p1: 'T' },
            TruthRow { p0: 'T', p1: 'F' },
            TruthRow { p0: 'F', p1: 'T' },
            TruthRow { p0: 'F', p1: 'F' },
        ],
    };

    let p0 = binary_projector(2, 0, true).expect("n=2, i=0 is in range");
    let p1 = binary_projector(2, 1, true).expect("n=2, i=1 is in range");
    let binary = BinaryProjectors {
        description: "diagonal truth projectors for two binary propositions",
        basis: binary_labels(2),
        p0_true_diagonal: p0.real_diagonal(),
        p1_true_diagonal: p1.real_diagonal(),
    };

    let (truth, observability) = observability_operators(2, 0).expect("n=2, i=0 is in range");
    let ternary = ObservabilityProjectors {
        description: "truth projector P and observability projector P* for proposition 0 of a two-proposition ternary context; P P* = P",
        basis: ternary_labels(2),
        proposition: 0,
        truth_diagonal: truth.real_diagonal(),
        observability_diagonal: observability.real_diagonal(),
    };

    let wd = witness_table(
        "point mass on (T, U, T): starred Wigner-d'Espagnat margin -1",
        &wd_maximal_violator(),
    );
    let chsh = witness_table(
        "four-cell mixture reaching post-selected CHSH value 4",
        &chsh_maximal_mixture(),
    );

    let files: [(&str, String); 5] = [
        ("truth-table.json", pretty(&truth_table)),
        ("binary-projectors-n2.json", pretty(&binary)),
        ("observability-projectors-n2.json", pretty(&ternary)),
        ("witness-wd-star.json", pretty(&wd)),
        ("witness-chsh-max.json", pretty(&chsh)),
    ];

    let mut written = Vec::new();
    for (name, content) in files {
        let path = output_dir.join(name);
        fs::write(&path, content).map_err(|e| RunFailure::Io {
            message: format!("cannot write {}: {e}", path.display()),
        })?;
        written.push(path);
    }
    Ok(written)
}

fn pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("tables hold only primitives") + "\n"
}
