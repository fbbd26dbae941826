//! JSON reports. Objects are `serde_json` maps without `preserve_order`,
//! so keys are always written sorted and output is byte-for-byte stable.

use linarr_core::lattice::{Arrangement, CanonicalKey, Lattice};
use linarr_core::milnor::{HilbertTable, InvariantReport, SaturationProfile};
use linarr_core::ratlin::RankConfig;
use linarr_core::strata::{ArrangementAnalysis, StratumReport, TeraoReport};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::file::ArrangementFile;

pub const TOOL: &str = "linarr";

/// Hex SHA-256 of `d=<d>;a,b,c|a,b,c|...` over the canonical incidence sets.
pub fn key_digest(key: &CanonicalKey) -> String {
    let blocks: Vec<String> =
        key.blocks.iter().map(|b| b.iter().map(usize::to_string).collect::<Vec<_>>().join(",")).collect();
    let text = format!("d={};{}", key.d, blocks.join("|"));
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn provenance(rank: &RankConfig) -> Value {
    json!({
        "tool": TOOL,
        "version": env!("CARGO_PKG_VERSION"),
        "certified_ranks": rank.is_exact(),
        "rank_mode": format!("{:?}", rank.mode).to_lowercase(),
        "primes": rank.primes,
        "prime_seed": rank.seed,
    })
}

pub fn hilbert(h: &HilbertTable) -> Value {
    json!({
        "degree_cap": h.degree_cap,
        "milnor_dims": h.milnor_dims,
        "jacobian_dims": h.jacobian_dims,
        "ar_dims": h.ar_dims,
        "koszul_dims": h.koszul_dims,
    })
}

pub fn saturation(s: &SaturationProfile) -> Value {
    json!({
        "saturation_dims": s.saturation_dims,
        "gap_dims": s.gap_dims,
        "sat_degree": s.sat_degree,
        "algebraically_rigid": s.algebraically_rigid,
    })
}

pub fn invariants(r: &InvariantReport) -> Value {
    json!({
        "d": r.d,
        "tau": r.tau,
        "mdr": r.mdr,
        "mdr_e": r.mdr_e,
        "ct": r.ct,
        "st": r.st,
        "reg": r.reg,
        "classification": r.classification.as_str(),
        "classification_basis": if r.line_arrangement { "line_arrangement" } else { "numeric_criterion" },
        "exponents": r.exponents.map(|(a, b)| vec![a, b]),
        "delta": r.delta,
        "saturation": r.saturation.as_ref().map(saturation),
        "hilbert": hilbert(&r.hilbert),
    })
}

pub fn lattice(l: &Lattice, key: &CanonicalKey) -> Value {
    let census: Map<String, Value> = l.census().into_iter().map(|(m, n)| (m.to_string(), n.into())).collect();
    let points: Vec<Value> = l
        .triple_and_higher()
        .map(|p| json!({"multiplicity": p.multiplicity(), "lines": p.lines().iter().map(|i| i + 1).collect::<Vec<_>>()}))
        .collect();
    json!({
        "d": l.d(),
        "census": census,
        "tau": l.tau(),
        "max_multiplicity": l.max_multiplicity(),
        "multiple_points": points,
        "canonical_key_digest": key_digest(key),
    })
}

pub fn stratum(s: &StratumReport) -> Value {
    json!({
        "local_dim": s.local_dim,
        "local_dim_qualifier": "local, smoothness-assumed",
        "jacobian_rank": s.jacobian_rank,
        "variant": s.variant.as_str(),
        "equations": s.equations,
        "codim_bound": s.codim_bound,
        "codim_bound_exceeds_dimension": s.codim_bound_exceeds_dimension,
        "orbit_dim": s.orbit_dim,
        "tau": s.tau,
    })
}

pub fn terao(t: &TeraoReport) -> Value {
    json!({
        "summary": t.summary(),
        "free": t.free,
        "exponents": t.exponents.map(|(a, b)| vec![a, b]),
        "at_most_twelve_lines": t.at_most_twelve_lines,
        "d1_at_most_five": t.d1_at_most_five,
        "multiplicity_at_least_d1": t.multiplicity_at_least_d1,
        "multiplicity_at_least_half": t.multiplicity_at_least_half,
        "d1_root_bound": t.d1_root_bound,
        "tau_below_minimum": t.tau_below_minimum,
        "excess_multiple_points": t.excess_multiple_points,
        "non_free_certificate": t.non_free_certificate(),
    })
}

pub fn input(arr: &Arrangement, label: Option<&str>) -> Value {
    let mut v = serde_json::to_value(ArrangementFile::from_arrangement(arr, label.map(str::to_string)))
        .expect("arrangement files serialize");
    if let Value::Object(m) = &mut v {
        m.remove("format_version");
    }
    v
}

/// The full report of one analyzed arrangement.
pub fn analysis(arr: &Arrangement, label: Option<&str>, a: &ArrangementAnalysis, rank: &RankConfig) -> Value {
    json!({
        "format_version": 1,
        "input": input(arr, label),
        "invariants": invariants(&a.invariants),
        "lattice": lattice(&a.lattice, &a.stratum.key),
        "stratum": stratum(&a.stratum),
        "terao": terao(&a.terao),
        "provenance": provenance(rank),
    })
}

pub fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}
