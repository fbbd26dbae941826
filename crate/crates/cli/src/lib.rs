//! Command-line front end for `linarr-core`: arrangement files, JSON
//! reports and census verification.

use std::path::Path;

use linarr_core::lattice::{is_isomorphic, realize, Arrangement, NamedLattice};
use linarr_core::milnor::AnalysisOptions;
use linarr_core::strata::{analyze_arrangement, ArrangementAnalysis, Variant};
use serde_json::{json, Map, Value};

pub mod census;
pub mod file;
pub mod report;

use file::ArrangementFile;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Invariant(String),
    #[error("{0}")]
    Params(String),
    #[error("{0}")]
    CensusFail(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Invariant(_) => 3,
            CliError::Params(_) => 4,
            CliError::CensusFail(_) => 5,
        }
    }
}

impl From<linarr_core::Error> for CliError {
    fn from(e: linarr_core::Error) -> Self {
        use linarr_core::Error as E;
        match e {
            E::InvalidParameters { .. } | E::NotRationallyRealizable(_) => CliError::Params(e.to_string()),
            other => CliError::Invariant(other.to_string()),
        }
    }
}

/// Options shared by `analyze` and `compare`.
#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub cap: Option<usize>,
    pub certified: bool,
    pub variant: Variant,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { cap: None, certified: false, variant: Variant::E }
    }
}

impl RunOptions {
    fn analysis(&self) -> AnalysisOptions {
        let base = if self.certified { AnalysisOptions::certified() } else { AnalysisOptions::default() };
        AnalysisOptions { cap: self.cap, ..base }
    }
}

pub fn parse_variant(s: &str) -> Result<Variant, CliError> {
    match s {
        "E" => Ok(Variant::E),
        "Eprime" | "E'" => Ok(Variant::EPrime),
        other => Err(CliError::Params(format!("unknown variant {other:?}; expected E or Eprime"))),
    }
}

fn run(arr: &Arrangement, opts: &RunOptions) -> Result<ArrangementAnalysis, CliError> {
    Ok(analyze_arrangement(arr, &opts.analysis(), opts.variant)?)
}

pub fn load(path: &Path) -> Result<(ArrangementFile, Arrangement), CliError> {
    let file = ArrangementFile::read(path)?;
    let arr = file.arrangement()?;
    Ok((file, arr))
}

pub fn analyze_value(file: &ArrangementFile, arr: &Arrangement, opts: &RunOptions) -> Result<Value, CliError> {
    let a = run(arr, opts)?;
    Ok(report::analysis(arr, file.label.as_deref(), &a, &opts.analysis().rank))
}

/// `linarr analyze`: the JSON report of an arrangement file.
pub fn cmd_analyze(path: &Path, opts: &RunOptions) -> Result<String, CliError> {
    let (file, arr) = load(path)?;
    Ok(report::to_json(&analyze_value(&file, &arr, opts)?))
}

pub fn realize_named(name: &str) -> Result<(NamedLattice, Arrangement), CliError> {
    let spec: NamedLattice = name.parse().map_err(CliError::from)?;
    let arr = realize(&spec)?;
    Ok((spec, arr))
}

/// `linarr realize`: an arrangement file for a named lattice.
pub fn cmd_realize(name: &str) -> Result<String, CliError> {
    let (spec, arr) = realize_named(name)?;
    Ok(ArrangementFile::from_arrangement(&arr, Some(spec.to_string())).to_json())
}

const COMPARED: [&str; 10] = ["tau", "mdr", "mdr_e", "ct", "st", "reg", "classification", "exponents", "delta", "local_dim"];

fn compared_value(a: &ArrangementAnalysis, key: &str) -> Value {
    if key == "local_dim" {
        return json!(a.stratum.local_dim);
    }
    report::invariants(&a.invariants).get(key).cloned().unwrap_or(Value::Null)
}

/// `linarr compare`: lattice isomorphism and invariant differences of two files.
pub fn cmd_compare(a: &Path, b: &Path, opts: &RunOptions) -> Result<String, CliError> {
    let (fa, xa) = load(a)?;
    let (fb, xb) = load(b)?;
    let ra = run(&xa, opts)?;
    let rb = run(&xb, opts)?;
    let mut side = Map::new();
    let mut differing = Vec::new();
    for key in COMPARED {
        let (va, vb) = (compared_value(&ra, key), compared_value(&rb, key));
        if va != vb {
            differing.push(key);
        }
        side.insert(key.to_string(), json!([va, vb]));
    }
    let (ma, mb) = (&ra.invariants.hilbert.milnor_dims, &rb.invariants.hilbert.milnor_dims);
    let milnor_diff: Vec<Value> = (0..ma.len().max(mb.len()))
        .filter(|&k| ma.get(k) != mb.get(k))
        .map(|k| json!({"degree": k, "dims": [ma.get(k), mb.get(k)]}))
        .collect();
    let label = |f: &ArrangementFile, p: &Path| f.label.clone().unwrap_or_else(|| p.display().to_string());
    let v = json!({
        "format_version": 1,
        "arrangements": [label(&fa, a), label(&fb, b)],
        "isomorphic": is_isomorphic(&ra.lattice, &rb.lattice),
        "canonical_key_digests": [report::key_digest(&ra.stratum.key), report::key_digest(&rb.stratum.key)],
        "invariants": side,
        "differing_invariants": differing,
        "milnor_dims_differ_at": milnor_diff,
        "provenance": report::provenance(&opts.analysis().rank),
    });
    Ok(report::to_json(&v))
}

/// `linarr census`: the verification table, failing when any cell fails.
pub fn cmd_census(d: usize, modular_only: bool, as_json: bool) -> Result<String, CliError> {
    let reports = census::census(d, modular_only)?;
    let out = if as_json { report::to_json(&census::to_json(&reports)) } else { census::render(&reports) };
    if reports.iter().all(census::CensusReport::all_pass) {
        Ok(out)
    } else {
        Err(CliError::CensusFail(out))
    }
}
