//! Verification of the small-degree lattice lists against shipped tables.

use std::collections::BTreeMap;

use linarr_core::lattice::{is_isomorphic, realize, Arrangement, NamedLattice};
use linarr_core::milnor::AnalysisOptions;
use linarr_core::ratlin::RankConfig;
use linarr_core::strata::{analyze_arrangement, tau_min, ArrangementAnalysis, Variant};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::CliError;

const D4: &str = include_str!("../data/census_d4.json");
const D5: &str = include_str!("../data/census_d5.json");
const D6: &str = include_str!("../data/census_d6.json");
const D11: &str = include_str!("../data/census_d11.json");

/// Degrees with a shipped table.
pub const CENSUS_DEGREES: [usize; 3] = [4, 5, 6];

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CensusTable {
    pub format_version: u32,
    pub d: usize,
    pub description: String,
    pub rank_mode: RankModeName,
    #[serde(default)]
    pub lattice_count: Option<usize>,
    #[serde(default)]
    pub tau_multiset: Option<Vec<usize>>,
    pub rows: Vec<CensusRow>,
    #[serde(default)]
    pub pairs: Vec<PairCheck>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RankModeName {
    Certified,
    Modular,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CensusRow {
    pub lattice: String,
    pub source: String,
    pub expect: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairCheck {
    pub lattices: [String; 2],
    pub source: String,
    pub isomorphic: bool,
    #[serde(default)]
    pub same_milnor_dims: Option<bool>,
}

/// One compared value.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub subject: String,
    pub check: String,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
    pub source: String,
}

#[derive(Debug, Clone)]
pub struct CensusReport {
    pub d: usize,
    pub description: String,
    pub certified: bool,
    pub cells: Vec<Cell>,
}

impl CensusReport {
    pub fn all_pass(&self) -> bool {
        self.cells.iter().all(|c| c.pass)
    }

    pub fn cell(&self, subject: &str, check: &str) -> Option<&Cell> {
        self.cells.iter().find(|c| c.subject == subject && c.check == check)
    }
}

pub fn table(d: usize) -> Option<CensusTable> {
    let text = match d {
        4 => D4,
        5 => D5,
        6 => D6,
        11 => D11,
        _ => return None,
    };
    Some(serde_json::from_str(text).expect("shipped census tables are well formed"))
}

/// The value a census check refers to, or `None` for an unknown check.
fn observed(check: &str, a: &ArrangementAnalysis) -> Option<Value> {
    let inv = &a.invariants;
    let v = match check {
        "tau" => json!(inv.tau),
        "mdr" => json!(inv.mdr),
        "mdr_e" => json!(inv.mdr_e),
        "ct" => json!(inv.ct),
        "st" => json!(inv.st),
        "reg" => json!(inv.reg),
        "classification" => json!(inv.classification.as_str()),
        "exponents" => json!(inv.exponents.map(|(x, y)| [x, y])),
        "local_dim" => json!(a.stratum.local_dim),
        "orbit_dim" => json!(a.stratum.orbit_dim),
        "exceeds_tau_min" => json!(inv.tau > tau_min(inv.d)),
        "algebraically_rigid" => json!(inv.saturation.as_ref().map(|s| s.algebraically_rigid)),
        _ => return None,
    };
    Some(v)
}

fn rank_for(t: &CensusTable, modular_only: bool) -> RankConfig {
    if modular_only || t.rank_mode == RankModeName::Modular {
        RankConfig::modular()
    } else {
        RankConfig::certified()
    }
}

fn analyze_row(row: &CensusRow, opts: &AnalysisOptions) -> Result<(Arrangement, ArrangementAnalysis), String> {
    let spec: NamedLattice = row.lattice.parse().map_err(|e| format!("{e}"))?;
    let arr = realize(&spec).map_err(|e| format!("{e}"))?;
    let a = analyze_arrangement(&arr, opts, Variant::E).map_err(|e| format!("{e}"))?;
    Ok((arr, a))
}

#[cfg(feature = "parallel")]
fn analyze_rows(rows: &[CensusRow], opts: &AnalysisOptions) -> Vec<Result<(Arrangement, ArrangementAnalysis), String>> {
    use rayon::prelude::*;
    rows.par_iter().map(|r| analyze_row(r, opts)).collect()
}

#[cfg(not(feature = "parallel"))]
fn analyze_rows(rows: &[CensusRow], opts: &AnalysisOptions) -> Vec<Result<(Arrangement, ArrangementAnalysis), String>> {
    rows.iter().map(|r| analyze_row(r, opts)).collect()
}

/// Realizes and analyzes every row of a table and compares each listed cell.
pub fn run_table(t: &CensusTable, modular_only: bool) -> CensusReport {
    let rank = rank_for(t, modular_only);
    let opts = AnalysisOptions { rank, ..AnalysisOptions::default() };
    let results = analyze_rows(&t.rows, &opts);
    let mut cells = Vec::new();
    let mut analyzed: BTreeMap<&str, &ArrangementAnalysis> = BTreeMap::new();
    for (row, result) in t.rows.iter().zip(&results) {
        match result {
            Ok((_, a)) => {
                analyzed.insert(row.lattice.as_str(), a);
                for (check, expected) in &row.expect {
                    let actual = observed(check, a).unwrap_or_else(|| json!(format!("unknown check {check}")));
                    cells.push(Cell {
                        subject: row.lattice.clone(),
                        check: check.clone(),
                        pass: &actual == expected,
                        expected: expected.clone(),
                        actual,
                        source: row.source.clone(),
                    });
                }
            }
            Err(e) => cells.push(Cell {
                subject: row.lattice.clone(),
                check: "analysis".into(),
                expected: json!("ok"),
                actual: json!(e),
                pass: false,
                source: row.source.clone(),
            }),
        }
    }

    let ok: Vec<&ArrangementAnalysis> = results.iter().filter_map(|r| r.as_ref().ok().map(|(_, a)| a)).collect();
    if let Some(n) = t.lattice_count {
        let distinct = ok.iter().enumerate().all(|(i, a)| ok[..i].iter().all(|b| !is_isomorphic(&a.lattice, &b.lattice)));
        cells.push(Cell {
            subject: format!("d={}", t.d),
            check: "distinct lattices".into(),
            expected: json!(n),
            actual: json!(if distinct { ok.len() } else { 0 }),
            pass: distinct && ok.len() == n,
            source: t.description.clone(),
        });
    }
    if let Some(expected) = &t.tau_multiset {
        let mut taus: Vec<usize> = ok.iter().map(|a| a.invariants.tau).collect();
        taus.sort_unstable();
        cells.push(Cell {
            subject: format!("d={}", t.d),
            check: "tau multiset".into(),
            expected: json!(expected),
            actual: json!(taus),
            pass: &taus == expected,
            source: t.description.clone(),
        });
    }
    for pair in &t.pairs {
        let subject = format!("{} vs {}", pair.lattices[0], pair.lattices[1]);
        let (Some(a), Some(b)) = (analyzed.get(pair.lattices[0].as_str()), analyzed.get(pair.lattices[1].as_str())) else {
            cells.push(Cell {
                subject,
                check: "pair".into(),
                expected: json!("both analyzed"),
                actual: json!("missing row"),
                pass: false,
                source: pair.source.clone(),
            });
            continue;
        };
        let iso = is_isomorphic(&a.lattice, &b.lattice);
        cells.push(Cell {
            subject: subject.clone(),
            check: "isomorphic".into(),
            expected: json!(pair.isomorphic),
            actual: json!(iso),
            pass: iso == pair.isomorphic,
            source: pair.source.clone(),
        });
        if let Some(same) = pair.same_milnor_dims {
            let eq = a.invariants.hilbert.milnor_dims == b.invariants.hilbert.milnor_dims;
            cells.push(Cell {
                subject,
                check: "same milnor_dims".into(),
                expected: json!(same),
                actual: json!(eq),
                pass: eq == same,
                source: pair.source.clone(),
            });
        }
    }
    CensusReport { d: t.d, description: t.description.clone(), certified: rank.is_exact(), cells }
}

/// The table for `d` followed by the degree-11 row.
pub fn census(d: usize, modular_only: bool) -> Result<Vec<CensusReport>, CliError> {
    if !CENSUS_DEGREES.contains(&d) {
        return Err(CliError::Params(format!("census is available for d in {{4, 5, 6}}, got {d}")));
    }
    let main = table(d).expect("table shipped");
    let extra = table(11).expect("table shipped");
    Ok(vec![run_table(&main, modular_only), run_table(&extra, modular_only)])
}

fn show(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "undefined".into(),
        other => other.to_string(),
    }
}

/// Plain-text verification table.
pub fn render(reports: &[CensusReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let mode = if r.certified { "certified ranks" } else { "modular ranks" };
        out.push_str(&format!("census d={} ({mode}): {}\n", r.d, r.description));
        let rows: Vec<[String; 5]> = r
            .cells
            .iter()
            .map(|c| {
                let status = if c.pass { "PASS" } else { "FAIL" };
                [c.subject.clone(), c.check.clone(), show(&c.expected), show(&c.actual), status.to_string()]
            })
            .collect();
        let header = ["lattice", "check", "expected", "actual", "status"].map(String::from);
        let mut widths = [0usize; 5];
        for row in std::iter::once(&header).chain(&rows) {
            for (w, s) in widths.iter_mut().zip(row) {
                *w = (*w).max(s.chars().count());
            }
        }
        let line = |row: &[String; 5], source: &str| {
            let mut s = String::from("  ");
            for (w, cell) in widths.iter().zip(row) {
                s.push_str(&format!("{cell:<w$}  ", w = *w));
            }
            s.push_str(source);
            s.trim_end().to_string() + "\n"
        };
        out.push_str(&line(&header, "source"));
        for (row, cell) in rows.iter().zip(&r.cells) {
            out.push_str(&line(row, &cell.source));
        }
        let failed = r.cells.iter().filter(|c| !c.pass).count();
        out.push_str(&format!("  {} cells, {} failed\n\n", r.cells.len(), failed));
    }
    out
}

pub fn to_json(reports: &[CensusReport]) -> Value {
    let tables: Vec<Value> = reports
        .iter()
        .map(|r| {
            let cells: Vec<Value> = r
                .cells
                .iter()
                .map(|c| {
                    json!({
                        "subject": c.subject, "check": c.check, "expected": c.expected,
                        "actual": c.actual, "pass": c.pass, "source": c.source,
                    })
                })
                .collect();
            json!({"d": r.d, "description": r.description, "certified_ranks": r.certified, "all_pass": r.all_pass(), "cells": cells})
        })
        .collect();
    json!({"format_version": 1, "tables": tables, "all_pass": reports.iter().all(CensusReport::all_pass)})
}
